"""Smoke test for the polynuclei extension module.

Build and install first, e.g. `pip install --no-build-isolation -e crates/py`,
then run `python python/smoke_test.py`.
"""

import json

import polynuclei as pn


def main():
    ids = pn.fixture_ids()
    assert len(ids) == 17 and "tab9" in ids

    tab9 = pn.fixture("tab9")
    assert tab9.order == 13 and tab9.elements[0] == "e"
    flags = tab9.classify()
    assert flags["polyloop"] and flags["tallini1"] and not flags["tallini2"]
    nuclei = tab9.nuclei()
    assert nuclei[4]["middle"] == ["e", "A", "B", "G", "H"]
    assert nuclei[1]["all"] == ["e", "A", "H"]
    assert all(tab9.verify().values())

    tab1 = pn.fixture("tab1")
    assert tab1.nucleus(4, "left", brute=True) == []
    assert tab1.product("1", "2") == ["3", "4"]
    assert tab1.set_product(["1"], ["1", "2"]) == ["1", "3", "4"]
    report = json.loads(tab1.classify_json())
    assert report["order"] == 6

    again = pn.parse(tab9.to_json())
    assert again == tab9 and again.to_json() == tab9.to_json()

    statuses = dict(pn.check_fixtures())
    assert statuses["tab5"] == "known-erratum" and "fail" not in statuses.values()

    s3 = pn.Group.symmetric(3)
    assert len(s3.subgroups()) == 6
    dc = s3.double_cosets(["id", "(12)"])
    assert dc.order == 2 and dc.classify()["polygroup"]
    assert s3.quotient(["id", "(12)"]).classify()["hypergroup"]
    try:
        s3.quotient(["id", "(12)", "(13)"])
    except ValueError as e:
        assert "not a subgroup" in str(e)
    else:
        raise AssertionError("expected ValueError")

    found = pn.search_structures(4, "polyloop", seed=1, budget=100_000)
    assert len(found) == 1 and found[0].classify()["polyloop"]
    assert found[0].to_json() == pn.search_structures(4, "polyloop", seed=1, budget=100_000)[0].to_json()

    r = pn.random_hypergroupoid(5, 0.4, 7)
    assert r.order == 5 and r.classify()["hypergroupoid"]

    print("polynuclei smoke test passed")


if __name__ == "__main__":
    main()
