"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line
in the terminal summary (see conftest.py).
"""
import io
import itertools
import random
from functools import lru_cache

import pytest
from oracles import (
    ALPHABETS,
    all_strings,
    construction_suite,
    hamming_example,
    levels_by_definition,
    make_instance,
    mismatches,
    random_genstring,
    random_pattern_set,
    set_example,
    simulate,
    single_example,
    window_scan,
)

from motifdfa import (
    Dfa,
    Nfa,
    add_start_self_loops,
    enumerate_language,
    hamming_distance,
    is_minimal,
    is_simple,
    isomorphic,
    matches,
    minimize,
    nfa_from_genstring,
    nfa_from_hamming,
    stream_search,
    subset_construction,
)
from motifdfa.automata import is_trim
from motifdfa.cli import main
from motifdfa.genstring import build_levels
from motifdfa.hamming import grid_size, grid_states
from motifdfa.search import CompiledMotif
from motifdfa.textio import dump, load


@pytest.fixture(scope="module")
def suite():
    instances = construction_suite()
    assert len(instances) >= 500
    assert {len(i.nfa.alphabet) for i in instances} == {2, 3, 4}
    assert {i.kind for i in instances} == {"genstring", "set", "hamming"}
    assert {i.looped for i in instances} == {False, True}
    return instances


@pytest.fixture(scope="module")
def determinized(suite):
    return [subset_construction(inst.nfa) for inst in suite]


def pairwise_overlap(languages):
    for (p, lp), (q, lq) in itertools.combinations(enumerate(languages), 2):
        if lp & lq:
            return p, q
    return None


# --------------------------------------------------------------------- 1

@pytest.mark.criterion(1, "subset construction on every suite NFA is minimal and fixed by minimize()")
def test_criterion_1_minimality(suite, determinized):
    for inst, dfa in zip(suite, determinized):
        assert is_minimal(dfa), inst.name
        m = minimize(dfa)
        assert m.n_states == dfa.n_states, inst.name
        assert isomorphic(m, dfa), inst.name


# --------------------------------------------------------------------- 2

def agree_up_to(nfa: Nfa, dfa: Dfa, depth: int) -> bool:
    """Exhaustive comparison on every string of length <= depth.

    Both automata are walked along the same prefix tree. The outcome below a
    node depends only on (NFA state set, DFA state, remaining depth), so
    repeated configurations are answered from a cache; this prunes identical
    subtrees without skipping any string.
    """
    rank = range(len(nfa.alphabet))
    accepting = set(nfa.accepting)

    @lru_cache(maxsize=None)
    def walk(states: frozenset, d: int, left: int) -> bool:
        if bool(states & accepting) != (d in dfa.accepting):
            return False
        if left == 0:
            return True
        for a in rank:
            nxt = frozenset(t for q in states for t in nfa.delta[q][a])
            if not walk(nxt, dfa.delta[d][a], left - 1):
                return False
        return True

    return walk(frozenset(nfa.starts), dfa.start, depth)


@pytest.mark.criterion(2, "NFA and DFA agree on every string up to length l+2")
def test_criterion_2_language_preservation(suite, determinized):
    for inst, dfa in zip(suite, determinized):
        assert agree_up_to(inst.nfa, dfa, inst.length + 2), inst.name
    # both also agree with the defining predicate wherever that is cheap to enumerate
    for inst, dfa in zip(suite, determinized):
        k = len(inst.nfa.alphabet)
        if k ** (inst.length + 2) > 4096:
            continue
        for s in all_strings(inst.nfa.alphabet, inst.length + 2):
            assert (dfa.run(s) in dfa.accepting) == inst.accepts(s) == simulate(inst.nfa, s), (inst.name, s)


# --------------------------------------------------------------------- 3

@pytest.mark.criterion(3, "every constructed NFA is simple; cross-checked by per-state enumeration for l <= 4")
def test_criterion_3_simplicity(suite):
    checked = 0
    for inst in suite:
        report = is_simple(inst.nfa)
        assert report.simple, (inst.name, report.failures())
        if inst.length > 4:
            continue
        # brute force: finite languages are exact at length l; looped ones are compared up to l+1
        bound = inst.length + (1 if inst.looped else 0)
        langs = [enumerate_language(inst.nfa, bound, start=q) for q in range(inst.nfa.n_states)]
        assert all(langs), inst.name
        assert pairwise_overlap(langs) is None, inst.name
        checked += 1
    assert checked > 300


# --------------------------------------------------------------------- 4

def mutants(suite, rng):
    """Unlooped suite NFAs with one extra transition into a start state from a different state."""
    for inst in suite:
        nfa = inst.nfa
        if inst.looped:
            continue
        starts = sorted(nfa.starts)
        sources = list(range(nfa.n_states))
        rng.shuffle(sources)
        for p in sources[:3]:
            s = rng.choice(starts)
            a = rng.randrange(len(nfa.alphabet))
            if p == s or s in nfa.delta[p][a]:
                continue
            rows = [list(row) for row in nfa.delta]
            rows[p][a] = rows[p][a] | {s}
            yield inst, Nfa(nfa.alphabet, nfa.n_states, tuple(tuple(r) for r in rows),
                            nfa.starts, nfa.accepting)


@pytest.mark.criterion(4, "start self-loops keep constructed NFAs simple and break simplicity after start re-entry")
def test_criterion_4_self_loops(suite):
    for inst in suite:
        if not inst.looped:
            assert is_simple(add_start_self_loops(inst.nfa)), inst.name

    rng = random.Random(4)
    kept = 0
    for inst, mutant in mutants(suite, rng):
        assert is_trim(mutant)
        if not is_simple(mutant):
            continue
        kept += 1
        looped = add_start_self_loops(mutant)
        report = is_simple(looped)
        assert not report.simple, inst.name
        if mutant.n_states <= 6 and len(mutant.alphabet) <= 3:
            # the reported overlap is genuine
            w, p, q = report.overlap.witness, report.overlap.p, report.overlap.q
            assert simulate(looped, w, start=p) and simulate(looped, w, start=q)
    assert kept >= 100


# --------------------------------------------------------------------- 5

@pytest.mark.criterion(5, "each Hamming grid state accepts exactly the suffixes with that many mismatches")
def test_criterion_5_grid_state_languages():
    rng = random.Random(5)
    cases = 0
    for k, alphabet in ALPHABETS.items():
        for length in range(1, 5):
            for d in range(4):
                for _ in range(3):
                    g = random_genstring(rng, alphabet, length)
                    for prune in (True, False):
                        nfa = nfa_from_hamming(g, d, prune)
                        for q, (e, consumed) in enumerate(grid_states(g, d, prune)):
                            rest = length - consumed
                            expected = {
                                s for s in all_strings(alphabet, rest, min_len=rest)
                                if mismatches(s, g.positions[consumed:]) == e
                            }
                            assert enumerate_language(nfa, length, start=q) == expected, (str(g), d, e, consumed)
                            cases += 1
    assert cases > 1000


# --------------------------------------------------------------------- 6

@pytest.mark.criterion(6, "worked-example counts: 5 states; levels 4/5/3/1 (13); 9 grid states")
def test_criterion_6_example_counts():
    assert nfa_from_genstring(single_example()).n_states == 5

    direct = levels_by_definition(set_example())
    assert [len(level) for level in direct] == [4, 5, 3, 1]
    built = build_levels(set_example())
    assert built.level_sizes == [4, 5, 3, 1]
    assert built.nfa.n_states == 13
    assert [{s.subset for s in level} for level in built.levels] == direct

    g = hamming_example()
    assert len(grid_states(g, 2, prune=False)) == 9
    assert nfa_from_hamming(g, 2).n_states == 9


# --------------------------------------------------------------------- 7

@pytest.mark.criterion(7, "level sizes, builder iterations and grid size stay within their bounds")
def test_criterion_7_complexity_guards(suite):
    for inst in suite:
        if inst.kind != "set" or inst.looped:
            continue
        built = build_levels(inst.patterns)
        n, k = len(built.patterns), len(inst.nfa.alphabet)
        assert max(built.level_sizes) <= 2 ** n, inst.name
        assert built.iterations <= 2 ** n * inst.length * k, inst.name

    rng = random.Random(7)
    for _ in range(300):
        g = random_genstring(rng, ALPHABETS[rng.choice([2, 3, 4])], rng.randint(1, 6))
        d = rng.randint(0, 6)
        expected = sum(min(d, len(g) - k) + 1 for k in range(len(g) + 1))
        assert grid_size(len(g), d) == expected
        assert nfa_from_hamming(g, d, prune=False).n_states == expected
        assert nfa_from_hamming(g, d).n_states <= expected


# --------------------------------------------------------------------- 8

@pytest.mark.criterion(8, "stream search matches a brute-force window scan, foreign symbols included")
def test_criterion_8_search_oracle():
    rng = random.Random(8)
    pairs = 0
    foreign_seen = 0
    for _ in range(300):
        k = rng.choice([2, 3, 4])
        alphabet = ALPHABETS[k]
        length = rng.randint(1, 5)
        kind = rng.choice(["genstring", "set", "hamming"])
        if kind == "set":
            pats = random_pattern_set(rng, alphabet, rng.randint(1, 4), length)
            accept = lambda w, ps=pats: any(matches(w, g) for g in ps)  # noqa: E731
        else:
            pats = [random_genstring(rng, alphabet, length)]
        d = rng.randint(0, 3)
        if kind == "genstring":
            accept = lambda w, g=pats[0]: matches(w, g)  # noqa: E731
        elif kind == "hamming":
            accept = lambda w, g=pats[0], d=d: hamming_distance(w, g) <= d  # noqa: E731
        inst = make_instance(kind, pats, d, looped=True)
        motif = CompiledMotif(subset_construction(inst.nfa), length)

        pool = alphabet.symbols * 4 + ("N", "x")
        text = "".join(rng.choice(pool) for _ in range(rng.randint(0, 200)))
        foreign_seen += any(c not in alphabet for c in text)
        found = {occ.end_pos for occ in stream_search(motif, text)}
        assert found == window_scan(text, length, accept, alphabet), (kind, [str(g) for g in pats], d, text)
        pairs += 1
    assert pairs >= 200 and foreign_seen >= 100


# --------------------------------------------------------------------- 9

def cli(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def construction_specs(tmp_path):
    set_path = tmp_path / "set.txt"
    set_path.write_text("\n".join(str(g) for g in set_example()) + "\n")
    specs = [
        ["--pattern", "A[AB]B[AC]", "--alphabet", "ABC"],
        ["--patterns-file", str(set_path), "--alphabet", "ABC"],
        ["--pattern", "ADC", "--alphabet", "ABCD", "--hamming", "2"],
        ["--pattern", "TATAWAWR", "--mode", "iupac"],
        ["--pattern", "CANNTG", "--mode", "iupac", "--hamming", "1"],
    ]
    rng = random.Random(9)
    for i in range(12):
        alphabet = ALPHABETS[rng.choice([2, 3, 4])]
        length = rng.randint(1, 5)
        pats = random_pattern_set(rng, alphabet, rng.randint(1, 4), length)
        path = tmp_path / f"set{i}.txt"
        path.write_text("\n".join(str(g) for g in pats) + "\n")
        specs.append(["--patterns-file", str(path), "--alphabet", "".join(alphabet.symbols)])
        g = random_genstring(rng, alphabet, rng.randint(1, 4))
        specs.append(["--pattern", str(g), "--alphabet", "".join(alphabet.symbols),
                      "--hamming", str(rng.randint(0, 3))])
    return [s + loop for s in specs for loop in ([], ["--suffix-loop"])]


@pytest.mark.criterion(9, "CLI table round-trip is byte-identical and stats reports minimality on construction specs")
def test_criterion_9_cli(tmp_path):
    for spec in construction_specs(tmp_path):
        nfa_path, dfa_path = tmp_path / "n.tsv", tmp_path / "d.tsv"
        code, _ = cli(["compile", *spec, "--out-nfa", str(nfa_path), "--out-dfa", str(dfa_path)])
        assert code == 0, spec
        for path in (nfa_path, dfa_path):
            first = path.read_bytes()
            assert dump(load(first.decode("utf-8"))).encode("utf-8") == first, spec

        code, out = cli(["stats", *spec])
        assert code == 0, spec
        rows = dict(line.split("\t", 1) for line in out.splitlines() if line)
        assert rows["is_simple"] == "true", spec
        assert rows["dfa_is_minimal"] == "true", spec
        assert rows["dfa_states"] == rows["minimal_states"], spec
