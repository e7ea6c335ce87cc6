import pytest

from su3fr import verify as Vf


def test_ids_unique_and_nonempty():
    ids = [i for i, _ in Vf.REGISTRY]
    assert len(ids) == len(set(ids)) > 100


def test_duplicate_registration_rejected():
    with pytest.raises(ValueError):
        Vf.check("thm1.order")(lambda c: True)


def test_selectors():
    assert len(Vf.select("all")) == len(Vf.REGISTRY)
    fam = [i for i, _ in Vf.select("thm14")]
    assert fam and all(i.startswith("thm14") for i in fam)
    assert [i for i, _ in Vf.select("thm1.order")] == ["thm1.order"]
    assert "eq21" in Vf.families()
    with pytest.raises(Vf.UnknownSelector):
        Vf.select("eq999")


def test_run_reports_every_selected_item():
    rep = Vf.run("thm1")
    assert [it.id for it in rep.items] == [i for i, _ in Vf.select("thm1")]
    assert rep.ok and rep.summary["fail"] == 0
    lines = rep.lines()
    assert all(line.count("\t") >= 2 for line in lines)
    data = rep.to_json()
    assert data["summary"] == rep.summary and "elapsed" in data["items"][0]


def test_cap_marks_items_failed():
    rep = Vf.run("thm1.order", cap=50)
    assert not rep.ok and rep.cap_exceeded


def test_crashing_item_is_a_failure(monkeypatch):
    def boom(c):
        raise RuntimeError("broken")
    monkeypatch.setattr(Vf, "REGISTRY", [("x.boom", boom)])
    rep = Vf.run("all")
    assert rep.items[0].status == "fail" and "RuntimeError" in rep.items[0].detail
