import io
import random

import pytest
from oracles import (
    hamming_example,
    mismatches,
    positionwise_match,
    single_example,
    window_scan,
)

from motifdfa import (
    Alphabet,
    CompiledMotif,
    ForeignSymbolError,
    Occurrence,
    add_start_self_loops,
    nfa_from_genstring,
    nfa_from_hamming,
    read_fasta,
    stream_search,
    subset_construction,
)
from motifdfa.genstring import Mode, parse_generalized_string
from motifdfa.search import ScanStats, has_suffix_semantics, shortest_accepted_length


def compiled(nfa, length, looped=True):
    if looped:
        nfa = add_start_self_loops(nfa)
    return CompiledMotif(subset_construction(nfa), length)


def ends(motif, text, **kw):
    return [o.end_pos for o in stream_search(motif, text, **kw)]


def test_single_example_text():
    g = single_example()
    motif = compiled(nfa_from_genstring(g), 4)
    text = "CCABBAABBC"
    expected = window_scan(text, 4, lambda w: positionwise_match(w, g.positions), g.alphabet)
    assert expected == {6, 10}
    assert ends(motif, text) == [6, 10]


def test_empty_text():
    motif = compiled(nfa_from_genstring(single_example()), 4)
    assert ends(motif, "") == []


def test_hamming_text():
    g = hamming_example()
    motif = compiled(nfa_from_hamming(g, 1), 3)
    assert ends(motif, "ADCADC") == [3, 6]


def test_occurrence_fields():
    motif = compiled(nfa_from_genstring(single_example()), 4)
    (occ,) = stream_search(motif, "CCABBA", "seq1")
    assert occ == Occurrence("seq1", 6, 4)
    assert occ.start_pos == 3


def test_overlapping_occurrences_reported():
    g = parse_generalized_string("AA", Alphabet("AB"))
    motif = compiled(nfa_from_genstring(g), 2)
    assert ends(motif, "AAAA") == [2, 3, 4]


def test_foreign_symbol_resets():
    g = single_example()
    motif = compiled(nfa_from_genstring(g), 4)
    stats = ScanStats()
    # "AB" + N + "BA" would match without the reset; the full window after N still does
    assert ends(motif, "ABNBAABBA", stats=stats) == [9]
    assert stats.foreign == 1 and stats.foreign_symbols == {"N": 1}
    assert ends(motif, "ABBNABBA") == [8]


def test_strict_mode_raises():
    motif = compiled(nfa_from_genstring(single_example()), 4)
    with pytest.raises(ForeignSymbolError) as info:
        list(stream_search(motif, "ABNA", strict=True))
    assert info.value.position == 3


def test_chunked_input_same_as_whole():
    motif = compiled(nfa_from_genstring(single_example()), 4)
    text = "CCABBAABBCABBAAA"
    chunks = [text[i:i + 3] for i in range(0, len(text), 3)]
    assert ends(motif, chunks) == ends(motif, text)


def test_case_folding_in_iupac_mode():
    g = parse_generalized_string("ANR", mode=Mode.IUPAC_DNA)
    nfa = add_start_self_loops(nfa_from_genstring(g))
    motif = CompiledMotif(subset_construction(nfa), 3, fold_case=True)
    assert ends(motif, "ttacg") == [5]
    plain = CompiledMotif(motif.dfa, 3)
    assert ends(plain, "ttacg") == []


def test_random_against_window_scan():
    rng = random.Random(21)
    alphabet = Alphabet("ABC")
    for _ in range(100):
        g = parse_generalized_string(
            "".join(rng.choice(["A", "B", "C", "[AB]", "[BC]"]) for _ in range(rng.randint(1, 5))),
            alphabet,
        )
        d = rng.randint(0, 2)
        if rng.random() < 0.5:
            motif = compiled(nfa_from_genstring(g), len(g))
            pred = lambda w: positionwise_match(w, g.positions)  # noqa: E731
        else:
            motif = compiled(nfa_from_hamming(g, d), len(g))
            pred = lambda w: mismatches(w, g.positions) <= d  # noqa: E731
        text = "".join(rng.choice("ABCABCABCx") for _ in range(rng.randint(0, 120)))
        assert set(ends(motif, text)) == window_scan(text, len(g), pred, alphabet)


def test_deterministic_rerun():
    motif = compiled(nfa_from_hamming(hamming_example(), 2), 3)
    text = "ABCDDCBAADCADDCCA" * 3
    assert list(stream_search(motif, text)) == list(stream_search(motif, text))


# --------------------------------------------------------------------- suffix-semantics detection

def test_suffix_semantics_detection():
    nfa = nfa_from_genstring(single_example())
    assert not has_suffix_semantics(subset_construction(nfa))
    looped = subset_construction(add_start_self_loops(nfa))
    assert has_suffix_semantics(looped)
    assert shortest_accepted_length(looped) == 4


# --------------------------------------------------------------------- FASTA

def test_fasta_single_record():
    assert list(read_fasta(io.BytesIO(b">s1\nACGT\n"))) == [("s1", "ACGT")]


def test_fasta_multiline_and_description():
    records = list(read_fasta(io.StringIO(">a desc\nAC\nGT\n>b\nT\n")))
    assert records == [("a", "ACGT"), ("b", "T")]


def test_fasta_requires_header():
    with pytest.raises(ValueError):
        list(read_fasta(io.StringIO("ACGT\n>a\nA\n")))


def test_fasta_empty_sequence_and_case():
    records = list(read_fasta(io.StringIO("\n>e\n>f x\nacgt\r\n"), fold_case=True))
    assert records == [("e", ""), ("f", "ACGT")]
