import math
import random

import numpy as np
import pytest

from nacflex.errors import PreconditionError
from nacflex.flex import FlexFamily, build_flex, sample_positions, verify_flex
from nacflex.graphs import Graph, complete_graph, cycle_graph, path_graph
from nacflex.nac import (
    Colour,
    EdgeColouring,
    monochromatic_components,
    nac_enumerate,
)
from nacflex.randmodels import RandomSource

from conftest import random_graph


def c4_fixture():
    """Alternating R/B/R/B on C4 with hand-picked base vectors."""
    g = cycle_graph(4)
    c = EdgeColouring.from_red_edges(g, [(0, 1), (2, 3)])
    red = monochromatic_components(c, Colour.RED)
    blue = monochromatic_components(c, Colour.BLUE)
    x = np.zeros((blue.count, 2))
    y = np.zeros((red.count, 2))
    x[blue.labels[1]] = (0.0, 0.0)
    x[blue.labels[0]] = (1.0, 0.0)
    y[red.labels[0]] = (0.0, 0.0)
    y[red.labels[2]] = (0.0, 1.0)
    return FlexFamily(g, c, red, blue, x, y)


class TestBuild:
    def test_rejects_non_nac(self):
        c = EdgeColouring.from_red_edges(complete_graph(3), [(0, 1)])
        with pytest.raises(PreconditionError):
            build_flex(c, RandomSource(1))

    def test_path_component_structure(self):
        c = EdgeColouring.from_red_edges(path_graph(3), [(0, 1)])
        fam = build_flex(c, RandomSource(2))
        assert fam.red_components.count == 2
        assert fam.blue_components.count == 2
        assert fam.x.shape == (2, 2) and fam.y.shape == (2, 2)

    def test_deterministic(self):
        c = EdgeColouring.from_red_edges(cycle_graph(4), [(0, 1), (2, 3)])
        a = build_flex(c, RandomSource(3, 1))
        b = build_flex(c, RandomSource(3, 1))
        assert np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)

    def test_base_separation(self):
        c = EdgeColouring.from_red_edges(cycle_graph(4), [(0, 1), (2, 3)])
        fam = build_flex(c, RandomSource(4))
        report = verify_flex(fam, 16)
        assert report.min_edge_length >= 1e-3


class TestPositions:
    def test_fixture_at_zero(self):
        fam = c4_fixture()
        pos = sample_positions(fam, 0.0)
        assert pos.tolist() == [[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [1.0, 1.0]]

    def test_periodicity(self):
        fam = c4_fixture()
        assert np.allclose(
            sample_positions(fam, 0.0), sample_positions(fam, 2 * math.pi), atol=1e-12
        )

    def test_isolated_vertex_moves_on_circle(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2)])
        c = EdgeColouring.from_red_edges(g, [(0, 1)])
        fam = build_flex(c, RandomSource(5))
        centre = fam.x[fam.blue_components.labels[3]]
        radius = float(np.linalg.norm(fam.y[fam.red_components.labels[3]]))
        for theta in np.linspace(0, 2 * math.pi, 17):
            p = sample_positions(fam, theta)[3]
            assert np.linalg.norm(p - centre) == pytest.approx(radius, abs=1e-12)


class TestVerify:
    def test_fixture_report(self):
        fam = c4_fixture()
        report = verify_flex(fam, 64)
        assert report.max_edge_drift < 1e-9
        assert report.max_pair_variation > 1e-3
        assert report.min_edge_length > 0

    def test_fixture_opposite_pair_swings(self):
        # distance between vertices 0 and 2 is |(1,0) - Rot(theta)(0,1)|,
        # which sweeps the full range [0, 2]
        fam = c4_fixture()
        thetas = 2 * np.pi * np.arange(64) / 64
        dists = [
            float(np.linalg.norm(sample_positions(fam, t)[0] - sample_positions(fam, t)[2]))
            for t in thetas
        ]
        assert max(dists) - min(dists) > 1.9

    def test_tree_conserves_lengths(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
        c = EdgeColouring.from_red_edges(g, [(0, 1), (3, 4)])
        fam = build_flex(c, RandomSource(6))
        report = verify_flex(fam, 64)
        assert report.max_edge_drift < 1e-9

    def test_random_corpus_conservation(self):
        rnd = random.Random(41)
        checked = 0
        while checked < 120:
            g = random_graph(rnd, 2, 6)
            res = nac_enumerate(g, cap=6)
            for c in res.colourings:
                fam = build_flex(c, RandomSource(7, checked))
                report = verify_flex(fam, 32)
                assert report.max_edge_drift < 1e-9
                assert report.min_edge_length > 0
                checked += 1
