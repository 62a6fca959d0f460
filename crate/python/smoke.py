"""Smoke test for the emseg Python bindings.

Install first:  pip install -e crates/emseg-py --no-build-isolation
Then run:       python python/smoke.py
"""

import emseg

E1 = "group Sp rank 4 | ([0,0],0,-) ([1,1],0,+) ([2,2],0,-)"

PI = {
    "ppp": "group SOodd rank 15 L( D[-1/2,-5/2], D[-1/2,-1/2], D[3/2,-5/2] ; (1/2)^+ (3/2)^+ (5/2)^+ )",
    "mmp": "group SOodd rank 15 L( D[-1/2,-5/2], D[-1/2,-1/2], D[3/2,-5/2] ; (1/2)^- (3/2)^- (5/2)^+ )",
    "mpm": "group SOodd rank 15 L( D[-1/2,-5/2], D[-1/2,-1/2], D[3/2,-5/2] ; (1/2)^- (3/2)^+ (5/2)^- )",
    "pmm": "group SOodd rank 15 L( D[-1/2,-5/2], D[-1/2,-1/2], D[3/2,-5/2] ; (1/2)^+ (3/2)^- (5/2)^- )",
}


def main():
    e = emseg.Ems(E1)
    assert e.validate() == [], e.validate()
    assert e.psi() == "S_1 + S_3 + S_5"
    assert e.rank == 4 and e.family == "Sp" and len(e) == 3
    assert emseg.Ems.from_symbol(e.symbol()) == e
    assert emseg.Ems(e.to_json()) == e
    assert emseg.Ems(e.to_rows()) == e
    assert hash(emseg.Ems(str(e))) == hash(e)

    members, exhausted = emseg.enumerate(e)
    assert exhausted and len(members) == 9
    psis, done = emseg.list_all_psi(e)
    assert done and "S_3*S_3" in psis
    assert emseg.equivalent(members[0], members[-1]) == "yes"

    lifted = emseg.lift(e, "3", [1])
    assert lifted.rank == 5

    try:
        emseg.Ems("group Sp rank 4 | ([0,0],0,-")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input accepted")

    want = {"ppp": "NotArthurType", "mmp": "NotArthurType", "mpm": "ArthurType", "pmm": "ArthurType"}
    for case, text in PI.items():
        status, witnesses, gaps = emseg.decide(emseg.LanglandsData(text))
        assert status == want[case], (case, status, gaps)
        print(f"{case}: {status}" + (f"  {witnesses[0]}" if witnesses else ""))

    l = emseg.LanglandsData("group SOodd rank 9 L( D[1/2,-5/2] ; (1/2)^+ (3/2)^- (3/2)^- )")
    assert l.step2_candidate() == "S_3*S_2 + S_4*S_3"
    assert l.check_m_consistency()
    print("smoke ok")


if __name__ == "__main__":
    main()
