import json
import random

import pytest

from teich.graphs import (
    Fusing,
    GraphError,
    HalfDehn,
    NotComposable,
    Simple,
    StableGraph,
    canonical_form,
    check_rigidification,
    compose_word,
    coordinate_system,
    enumerate_trivalent,
    extend,
    find_rigidification,
    fusing_rewrite,
    is_isomorphic,
    make_fusing,
    validate,
)


def theta():
    return StableGraph(vertices=frozenset({"u", "w"}),
                       edges={"e1": ("u", "w"), "e2": ("u", "w"), "e3": ("u", "w")},
                       tails={})


def rose(g):
    return StableGraph(vertices=frozenset({"v"}),
                       edges={"e%d" % i: ("v", "v") for i in range(g)}, tails={})


def dumbbell():
    return StableGraph(vertices=frozenset({"u", "w"}),
                       edges={"l1": ("u", "u"), "l2": ("w", "w"), "m": ("u", "w")},
                       tails={})


def test_validate_and_genus():
    th = theta()
    rep = validate(th)
    assert rep.ok and not rep.all_messages()
    assert th.genus() == 2
    assert th.graph_type() == (2, 0)
    assert th.is_trivalent()

    bad = StableGraph(vertices=frozenset({"u", "w"}),
                      edges={"e": ("u", "w")}, tails={"t": "u"})
    rep = validate(bad)
    assert not rep.ok
    assert rep.stability_violations     # degree-2 vertices

    dangling = StableGraph(vertices=frozenset({"u"}), edges={"e": ("u", "zz")}, tails={})
    assert validate(dangling).structural_errors


def test_loops_count_twice_for_stability():
    r1 = rose(1)   # single vertex, one loop: degree 2
    assert validate(r1).stability_violations
    assert validate(rose(2)).ok


def test_genus_formula_disconnected_guard():
    two = StableGraph(vertices=frozenset({"a", "b"}),
                      edges={"x": ("a", "a"), "y": ("b", "b")}, tails={})
    assert validate(two).structural_errors  # disconnected


def test_extend_adds_one_loop_vertices():
    g04 = enumerate_trivalent(0, 4)[0].graph
    ext = extend(g04)
    assert not ext.tails
    # each tail becomes a connecting edge plus a loop at the fresh vertex
    assert len(ext.edges) == len(g04.edges) + 2 * len(g04.tails)
    assert ext.genus() == g04.genus() + len(g04.tails)
    assert validate(ext).ok


def test_rigidification_and_coordinates():
    for gr in (theta(), dumbbell(), rose(2), rose(3)):
        rig = find_rigidification(gr)
        check_rigidification(gr, rig)
        e_tau, q_edges = coordinate_system(gr, rig)
        g, n = gr.graph_type()
        assert len(e_tau) + len(q_edges) == 3 * g - 3 + n


def test_rigidification_cross_vertex_constraint():
    th = theta()
    rig = find_rigidification(th)
    # tau_v(a) != -tau_{v'}(a): per slot, no branch and its opposite
    for slot in range(3):
        chosen = [rig.assignment[v][slot] for v in sorted(th.vertices)]
        for b in chosen:
            assert ("edge", b[1], -b[2]) not in chosen or b[0] != "edge"


def test_fusing_rewrite_theta():
    th = theta()
    results = fusing_rewrite(th, "e1")
    assert len(results) == 2
    for res in results:
        assert validate(res.graph).ok
        assert res.graph.genus() == 2
        assert res.new_edge in res.graph.edges
    with pytest.raises(GraphError):
        fusing_rewrite(dumbbell(), "l1")    # loops are the simple-move regime


def test_fusing_on_tailed_graph():
    # trivalent (1,2): loop + edge + two tails on the far vertex
    items = enumerate_trivalent(1, 2)
    for item in items:
        gr = item.graph
        for e, (a, b) in gr.edges.items():
            if a == b:
                continue
            if gr.degree(a) != 3 or gr.degree(b) != 3:
                continue
            for res in fusing_rewrite(gr, e):
                assert validate(res.graph).ok
                assert res.graph.graph_type() == gr.graph_type()


def test_enumeration_counts():
    known = {(0, 3): 1, (0, 4): 3, (1, 1): 1, (0, 5): 15, (0, 6): 105,
             (1, 2): 2, (2, 0): 2, (3, 0): 5}
    for (g, n), want in known.items():
        assert len(enumerate_trivalent(g, n)) == want


def test_enumeration_certificates_distinct():
    items = enumerate_trivalent(1, 3)
    certs = [i.certificate for i in items]
    assert len(set(certs)) == len(certs)
    for i in items:
        assert i.graph.graph_type() == (1, 3)
        assert i.graph.is_trivalent()


def test_canonical_form_relabeling_invariance():
    rng = random.Random(7)
    for item in enumerate_trivalent(1, 2) + enumerate_trivalent(0, 4):
        gr = item.graph
        names = sorted(gr.vertices)
        new = {v: "w%d" % i for i, v in enumerate(rng.sample(names, len(names)))}
        relabeled = StableGraph(
            vertices=frozenset(new.values()),
            edges={"E" + e: (new[a], new[b]) for e, (a, b) in gr.edges.items()},
            tails={t: new[v] for t, v in gr.tails.items()},
            numbering=gr.numbering,
        )
        assert canonical_form(gr) == canonical_form(relabeled)
        assert is_isomorphic(gr, relabeled)
    assert not is_isomorphic(theta(), dumbbell())


def test_json_round_trip():
    for gr in (theta(), enumerate_trivalent(1, 2)[0].graph):
        data = json.loads(json.dumps(gr.to_json()))
        back = StableGraph.from_json(data)
        assert back == gr


def test_compose_word_and_rejection():
    th = theta()
    mv = make_fusing(th, "e1", 0)
    word = compose_word([mv, HalfDehn(edge=mv.new_edge, graph=mv.target)])
    assert len(word) == 2 and word.source == th

    with pytest.raises(NotComposable) as ei:
        compose_word([mv, HalfDehn(edge="e1", graph=th)])
    assert ei.value.index == 1

    bogus = Fusing(edge="e1", new_edge="nope", source=th, target=th)
    with pytest.raises(NotComposable) as ei:
        compose_word([bogus])
    assert ei.value.index == 0


def test_simple_move_representable():
    db = dumbbell()
    mv = Simple(loop="l1", graph=db)
    mv.check()
    word = compose_word([mv, HalfDehn(edge="m", graph=db)])
    assert len(word) == 2
