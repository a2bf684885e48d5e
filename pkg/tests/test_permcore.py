import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnp.permcore import (GroupError, Perm, PermGroup, PermParseError, alternating_group, are_conjugate,
                          commutator, conjugacy_classifier, contains_subgroup_type, derived_subgroup,
                          double_coset_size, double_cosets, generate_group, parse_permutation, point_stabilizer,
                          subgroup_classes, sylow_subgroup, symmetric_group)


def P(text, n):
    return parse_permutation(text, n)


def brute_elements(gens, n):
    seen = {Perm.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


perms = st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.permutations(list(range(n))).map(Perm))


# --- parsing and printing


def test_parse_three_cycle():
    p = P("(1,2,3)", 5)
    assert [p(i) for i in range(1, 6)] == [2, 3, 1, 4, 5]


def test_parse_empty_is_identity():
    assert P("", 4) == Perm.identity(4)
    assert P("  ", 4).is_identity()


def test_parse_double_transposition():
    p = P("(1,2)(3,4)", 4)
    assert p.cycles() == [(1, 2), (3, 4)]
    assert str(p) == "(1,2)(3,4)"


def test_cycles_compose_left_to_right():
    # (1,2) first, then (2,3): 1 -> 2 -> 3
    assert P("(1,2)(2,3)", 3) == P("(1,2)", 3) * P("(2,3)", 3) == P("(1,3,2)", 3)


def test_whitespace_tolerated():
    assert P(" ( 1 , 2 ) (3,4) ", 4) == P("(1,2)(3,4)", 4)


@pytest.mark.parametrize("text,offset", [("(1,5)", 3), ("(1,2,1)", 5), ("(1,2", 4), ("(1)", 2), ("x", 0)])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(PermParseError) as info:
        P(text, 4)
    assert info.value.offset == offset


@given(perms)
def test_print_parse_round_trip(p):
    assert P(str(p), len(p)) == p


@given(perms)
def test_inverse(p):
    assert (p * ~p).is_identity()
    assert (~p * p).is_identity()


@given(perms)
def test_cycle_type_conjugation_invariant(p):
    x = Perm(random.Random(len(p)).sample(range(len(p)), len(p)))
    assert (~x * p * x).cycle_type() == p.cycle_type()
    assert sum(p.cycle_type()) == len(p)


def test_printer_orders_cycles_by_smallest_point():
    assert str(P("(4,5)(1,3)", 5)) == "(1,3)(4,5)"
    assert str(P("(3,1,2)", 3)) == "(1,2,3)"


# --- groups


def test_generate_a5():
    assert generate_group([P("(1,2,3,4,5)", 5), P("(1,2,3)", 5)], 5).order == 60


def test_generate_trivial():
    G = generate_group([], 4)
    assert G.order == 1 and G.elements() == [Perm.identity(4)]


def test_generate_v4():
    assert generate_group([P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)], 4).order == 4


def test_degree_mismatch():
    with pytest.raises(GroupError):
        generate_group([Perm.identity(3), Perm.identity(4)], 4)


@pytest.mark.parametrize("gens,n", [
    (["(1,2,3,4,5)", "(1,2)"], 5),
    (["(1,2,3)(4,5,6)", "(1,4)(2,5)"], 6),
    (["(1,2,3,4)", "(5,6,7)"], 7),
    (["(1,2)(3,4)(5,6)", "(1,3,5)(2,4,6)", "(1,2)"], 6),
])
def test_membership_matches_enumeration(gens, n):
    gs = [P(g, n) for g in gens]
    G = PermGroup(gs, n)
    elems = brute_elements(gs, n)
    assert G.order == len(elems)
    rng = random.Random(n)
    for _ in range(300):
        x = Perm(rng.sample(range(n), n))
        assert (x in G) == (x in elems)


def test_large_natural_groups_cheap():
    A = alternating_group(12)
    assert A.order == 239500800
    assert P("(1,2,3)", 12) in A
    assert P("(1,2)", 12) not in A


# --- derived subgroups


def brute_derived_order(G):
    els = G.elements()
    comms = {commutator(x, y) for x in els for y in els}
    return len(brute_elements(list(comms), G.degree))


def test_derived_a4_is_v4():
    A4 = alternating_group(4)
    D = derived_subgroup(A4)
    assert D.order == 4 == brute_derived_order(A4)
    assert all(g.cycle_type() in ((2, 2), (1, 1, 1, 1)) for g in D.elements())


def test_derived_abelian_trivial():
    assert derived_subgroup(PermGroup([P("(1,2,3,4)", 4)], 4)).order == 1


def test_derived_s4_is_a4():
    D = derived_subgroup(symmetric_group(4))
    assert D.order == 12 == brute_derived_order(symmetric_group(4))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_derived_natural(n):
    S, A = symmetric_group(n), alternating_group(n)
    assert derived_subgroup(S).order == A.order
    assert A.order // derived_subgroup(A).order == (3 if n == 4 else 1)


# --- conjugacy


def test_a4_three_cycle_not_conjugate_to_inverse():
    assert are_conjugate(alternating_group(4), P("(1,2,3)", 4), P("(1,3,2)", 4))[0] is False


def test_s4_three_cycle_conjugate_to_inverse():
    a, b = P("(1,2,3)", 4), P("(1,3,2)", 4)
    ok, x = are_conjugate(symmetric_group(4), a, b)
    assert ok and ~x * a * x == b
    assert ~P("(2,3)", 4) * a * P("(2,3)", 4) == b


def test_a4_double_transpositions_conjugate():
    a, b = P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)
    ok, x = are_conjugate(alternating_group(4), a, b)
    assert ok and x.is_even() and ~x * a * x == b
    w = P("(2,3,4)", 4)
    assert ~w * a * w == b or w * a * ~w == b


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_an_splitting_rule_matches_search(n):
    A = alternating_group(n)
    els = A.elements()
    # exhaustive classes by orbit under conjugation
    label = {}
    for x in els:
        if x in label:
            continue
        cls = {~g * x * g for g in els}
        for y in cls:
            label[y] = x
    key = conjugacy_classifier(A)
    reps = list({v: None for v in label.values()})
    for a in reps:
        for b in reps:
            same = label[a] == label[b]
            assert (key(a) == key(b)) == same
            ok, x = are_conjugate(A, a, b)
            assert ok == same
            if ok:
                assert x in A and ~x * a * x == b
    # every element against the class representatives
    for y in els:
        assert key(y) == key(label[y])


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_conjugacy_equivalence_relation(data):
    n = data.draw(st.integers(4, 8))
    kind = data.draw(st.sampled_from("SA"))
    G = symmetric_group(n) if kind == "S" else alternating_group(n)
    draw = lambda: Perm(data.draw(st.permutations(list(range(n)))))
    a, b, c = draw(), draw(), draw()
    if kind == "A":
        a, b, c = [x if x.is_even() else x * Perm.from_cycles([(1, 2)], n) for x in (a, b, c)]
    assert are_conjugate(G, a, a)[0]
    ab, x = are_conjugate(G, a, b)
    assert ab == are_conjugate(G, b, a)[0]
    if ab:
        assert x in G and ~x * a * x == b
        if are_conjugate(G, b, c)[0]:
            assert are_conjugate(G, a, c)[0]


# --- double cosets


def check_double_cosets(G, H, D):
    reps = double_cosets(G, H, D)
    assert reps[0].is_identity()
    sizes = []
    for x in reps:
        inter = sum(1 for h in H.elements() if ~x * h * x in D)
        size = H.order * D.order // inter
        assert size == double_coset_size(H, D, x) == len({h * x * d for h in H.elements() for d in D.elements()})
        sizes.append(size)
    assert sum(sizes) == G.order
    return reps, sizes


def test_double_cosets_whole_group():
    G = symmetric_group(4)
    H = PermGroup([P("(1,2)", 4)], 4)
    assert len(check_double_cosets(G, G, H)[0]) == 1
    assert len(check_double_cosets(G, H, G)[0]) == 1


def test_double_cosets_a4():
    A4 = alternating_group(4)
    H = PermGroup([P("(1,2)(3,4)", 4)], 4)
    V = PermGroup([P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)], 4)
    reps, sizes = check_double_cosets(A4, H, V)
    assert len(reps) == 3 and sizes == [4, 4, 4]


def test_double_cosets_s4_s3():
    S4 = symmetric_group(4)
    S3 = point_stabilizer(S4, 4)
    reps, _ = check_double_cosets(S4, S3, S3)
    assert len(reps) == 2 and reps[1](4) != 4


def test_double_cosets_rejects_non_subgroup():
    with pytest.raises(GroupError):
        double_cosets(alternating_group(4), PermGroup([P("(1,2)", 4)], 4), alternating_group(4))


@pytest.mark.parametrize("n", [4, 5])
def test_double_cosets_all_pairs_small(n):
    S = symmetric_group(n)
    classes = subgroup_classes(S)
    rng = random.Random(0)
    for H, D in itertools.islice(((rng.choice(classes), rng.choice(classes)) for _ in range(40)), 40):
        check_double_cosets(S, H, D)


# --- subgroup patterns


def test_patterns():
    V4 = PermGroup([P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)], 4)
    assert contains_subgroup_type(V4, "V4dt")
    assert not contains_subgroup_type(PermGroup([P("(1,2,3,4)", 4)], 4), "V4")
    assert contains_subgroup_type(PermGroup([P("(1,2,3)", 6), P("(4,5,6)", 6)], 6), "C3xC3")
    # V4 of transpositions is not the qualified pattern
    V4t = PermGroup([P("(1,2)", 4), P("(3,4)", 4)], 4)
    assert contains_subgroup_type(V4t, "V4") and not contains_subgroup_type(V4t, "V4dt")
    D4 = PermGroup([P("(1,2,3,4)", 4), P("(1,3)", 4)], 4)
    assert contains_subgroup_type(D4, "D4") and contains_subgroup_type(D4, "C4")
    assert not contains_subgroup_type(D4, "C3")
    with pytest.raises(GroupError):
        contains_subgroup_type(D4, "Q8")


# --- Sylow


def is_p_group(G, p):
    k = G.order
    while k % p == 0:
        k //= p
    return k == 1


@pytest.mark.parametrize("G,p,order", [
    (symmetric_group(4), 2, 8),
    (alternating_group(4), 3, 3),
    (PermGroup([P("(1,2,3)(4,5)", 5)], 5), 5, 1),
    (symmetric_group(6), 3, 9),
    (alternating_group(7), 2, 8),
])
def test_sylow(G, p, order):
    S = sylow_subgroup(G, p)
    assert S.order == order and is_p_group(S, p) and S.is_subgroup_of(G)


# --- subgroup classes


@pytest.mark.parametrize("n,count", [(3, 4), (4, 11), (5, 19)])
def test_subgroup_class_counts(n, count):
    assert len(subgroup_classes(symmetric_group(n))) == count
