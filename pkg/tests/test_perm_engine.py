import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiberbound.atoms import SetSpec
from fiberbound.errors import BadParametersError, InfeasibleRunError, OracleCodomainError
from fiberbound.oracles import pool_perm_oracle, truncate_oracle
from fiberbound.perm_engine import (PermDiagEngine, assemble, build_family,
                                    run_perm_diag, seed_transpositions)
from fiberbound.perms import FinPerm

c = FinPerm.cycle


def test_seed_transpositions():
    seeds = seed_transpositions(3, 1000)
    assert [str(s) for s in seeds] == ["(1000;1001)", "(1000;1002)", "(1000;1003)"]
    assert len(set(seed_transpositions(40, 1000))) == 40
    with pytest.raises(BadParametersError):
        seed_transpositions(0, 1000)


def test_build_family_single_value_sticks():
    entries, stuck = build_family([c([1, 2]), c([1, 2])], 2)
    assert len(entries) == 1
    assert entries[0].case == 1 and entries[0].i == 0 and entries[0].x == 1
    assert entries[0].perm == c([1, 2])
    assert stuck == (1, frozenset({1, 2}))


def test_build_family_identity_values_stick_immediately():
    entries, stuck = build_family([FinPerm.identity()] * 4, 2)
    assert entries == []
    assert stuck == (0, frozenset())


def test_build_family_case_two_formula():
    # with {1} occupied, answers (1;3) and (1;4) disagree outward at 1
    s0, s1 = c([1, 3]), c([1, 4])
    t = s1.after(s0.inverse()).deflate(SetSpec.cofinite({1}))
    assert t == c([3, 4])


def test_build_family_full_run():
    values = [c([1000, 1001 + j]) for j in range(8)]
    entries, stuck = build_family(values, 2)
    assert stuck is None
    assert len(entries) == 4  # levels 0..3
    assert entries[0].case == 1
    assert all(e.case == 2 for e in entries[1:])
    supports = [e.perm.moved for e in entries]
    for i in range(len(supports)):
        for j in range(i + 1, len(supports)):
            assert not (supports[i] & supports[j])


def brute_family(values, n):
    # reference route: scan raw index pairs with no first-occurrence cut
    m = len(values)
    top = m.bit_length() - 1
    out = []
    occupied = set()
    for level in range(top + 1):
        chosen = None
        for i, s in enumerate(values):
            xs = [x for x in s.moved if x not in occupied and s(x) not in occupied]
            if xs:
                chosen = (1, i, None, min(xs), s.deflate(SetSpec.cofinite(occupied)))
                break
        if chosen is None:
            for i in range(m):
                for j in range(i + 1, m):
                    xs = [x for x in occupied
                          if values[i](x) != values[j](x)
                          and values[i](x) not in occupied and values[j](x) not in occupied]
                    if xs:
                        chosen = (2, i, j, min(xs),
                                  values[j].after(values[i].inverse()).deflate(
                                      SetSpec.cofinite(occupied)))
                        break
                if chosen:
                    break
        if chosen is None:
            return out, (level, frozenset(occupied))
        out.append(chosen)
        occupied |= chosen[4].moved
    return out, None


@st.composite
def small_value_lists(draw):
    pool = [FinPerm.identity()] + [c(list(pair)) for pair in
                                   [(0, 1), (0, 2), (1, 2), (2, 3), (0, 3), (1, 3)]]
    return draw(st.lists(st.sampled_from(pool), min_size=1, max_size=6))


@given(small_value_lists())
@settings(max_examples=200)
def test_family_matches_raw_pair_scan(values):
    got_entries, got_stuck = build_family(values, 2)
    want, want_stuck = brute_family(values, 2)
    assert got_stuck == want_stuck
    assert [(e.case, e.i, e.j, e.x, e.perm) for e in got_entries] == want


def test_assemble_examples():
    entries, _ = build_family([c([1000, 1001 + j]) for j in range(4)], 2)
    members = [e.perm for e in entries]
    assert assemble(entries, []) == FinPerm.identity()
    assert assemble(entries, [0]) == members[0]
    both = assemble(entries, [0, 1])
    assert both == members[0].after(members[1])


def test_assemble_injective():
    entries, stuck = build_family([c([1000, 1001 + j]) for j in range(1000)], 2)
    assert stuck is None
    width = len(entries)
    assert width == 10
    seen = {assemble(entries, [i for i in range(width) if mask >> i & 1])
            for mask in range(1 << width)}
    assert len(seen) == 1 << width


def test_strict_low_n_violates_at_seed_queries():
    cert = run_perm_diag(1, 1, truncate_oracle(1), steps=5, mode="strict")
    assert cert["kind"] == "ledger-violation"
    assert len(cert["outputs"]) == 257
    assert cert["violation"]["output"] == "()"
    assert len(cert["violation"]["witnesses"]) == 2
    assert cert["all_distinct"]


def test_strict_high_n_refused():
    with pytest.raises(InfeasibleRunError):
        PermDiagEngine(2, 1, truncate_oracle(2), mode="strict")


def test_opportunistic_pool_pigeonhole():
    cert = run_perm_diag(2, 1, pool_perm_oracle(10, 2), steps=50,
                         mode="opportunistic", seed_count=64)
    assert cert["kind"] == "ledger-violation"
    assert len(cert["violation"]["witnesses"]) == 2


def test_opportunistic_fresh_stream():
    # memoized injective oracle: never violates, every step must construct
    memo = {}

    def injective(s):
        if s not in memo:
            memo[s] = c([0, len(memo) + 1])
        return memo[s]

    cert = run_perm_diag(2, 1, injective, steps=20, mode="opportunistic", seed_count=8)
    assert cert["kind"] == "perm-diag"
    assert cert["steps"] == 20
    assert len(cert["outputs"]) == 28
    assert cert["all_distinct"]
    for trace in cert["traces"]:
        assert trace["stuck_at"] is None or trace["fallback"]
        seen = set()
        for entry in trace["family"]:
            member = FinPerm.parse(entry["t"])
            assert member.moved and len(member.moved) <= 4
            assert not (member.moved & seen)
            seen |= member.moved


def test_opportunistic_fallback_on_constant_oracle():
    cert = run_perm_diag(2, 10, lambda s: c([1, 2]), steps=3,
                         mode="opportunistic", seed_count=2)
    assert cert["kind"] == "perm-diag"
    assert cert["steps"] == 3
    fallbacks = [t for t in cert["traces"] if t["fallback"]]
    assert fallbacks
    for t in fallbacks:
        assert t["stuck_at"] is not None
        assert t["chosen_a"] is None
    assert cert["all_distinct"]


def test_candidate_order_prefers_empty_set():
    # with fresh seeds the first constructed value is the identity
    memo = {}

    def injective(s):
        if s not in memo:
            memo[s] = c([0, len(memo) + 1])
        return memo[s]

    engine = PermDiagEngine(2, 1, injective, mode="opportunistic", seed_count=8)
    trace = engine.step()
    assert trace["chosen_a"] == []
    assert trace["result"] == "()"


def test_oracle_codomain_checked():
    engine = PermDiagEngine(2, 1, lambda s: c([1, 2, 3, 4, 5]),
                            mode="opportunistic", seed_count=2)
    with pytest.raises(OracleCodomainError):
        engine.step()


def test_steps_validation():
    with pytest.raises(BadParametersError):
        run_perm_diag(1, 1, truncate_oracle(1), steps=0, mode="strict")


def test_flipping_oracle_detected():
    from fiberbound.errors import InconsistentOracleError

    calls = {"n": 0}

    def unstable(s):
        calls["n"] += 1
        return c([0, 1]) if calls["n"] <= 8 else c([0, 2])

    engine = PermDiagEngine(2, 64, unstable, mode="opportunistic", seed_count=8)
    engine.step()
    with pytest.raises(InconsistentOracleError):
        engine.step()


def test_stuck_in_strict_reports_inconsistency(monkeypatch):
    engine = PermDiagEngine(1, 4, lambda s: FinPerm.identity(), mode="opportunistic",
                            seed_count=4)
    engine.mode = "strict"
    monkeypatch.setattr("fiberbound.perm_engine.build_family",
                        lambda values, n: ([], (0, frozenset())))
    monkeypatch.setattr(engine, "_query_all", lambda: [FinPerm.identity()] * 4)
    cert = engine.run(3)
    assert cert["kind"] == "stuck"
    assert cert["traces"][-1]["stuck_at"] == [0, []]
