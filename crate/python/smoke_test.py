"""Smoke test for the srs_py extension module."""

import json

import srs_py


def main():
    disc = srs_py.seed("disc")
    assert disc.maxwell == 6, disc
    assert srs_py.check_tight(disc)["status"] == "tight"

    back = srs_py.Mesh.from_json(disc.to_json())
    assert back.to_json() == disc.to_json()

    octa = srs_py.seed("octahedron")
    report = srs_py.is_min_3rigid(octa)
    assert report["verdict"] == "minimally-rigid", report

    bad = srs_py.seed("violating-join")
    assert not srs_py.check_girth(bad)["passes"]
    fixed, summary = srs_py.repair(bad)
    assert summary["success"], summary
    assert srs_py.check_girth(fixed)["passes"]
    assert srs_py.check_tight(fixed)["status"] == "tight"

    spec = {
        "format": "tree-spec/1",
        "root": 0,
        "nodes": [
            {"id": 0, "label": "S0", "children": [1]},
            {"id": 1, "label": "S1", "children": [], "tail": {"kind": "ray", "unit": ["S1"]}},
        ],
    }
    spec_json = json.dumps(spec)
    print("classify:", srs_py.classify(spec_json))
    stages = srs_py.build_tower(spec_json, 2)
    assert [s.maxwell for s in stages] == [6, 6, 6]
    print("tower:", stages)

    block = srs_py.schwarz_block(1)
    print("schwarz m=1:", block)
    print("ok")


if __name__ == "__main__":
    main()
