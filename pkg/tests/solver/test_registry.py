"""Tests for the solution registry."""

import threading

import numpy as np

from acmorse.solver import SolutionRegistry


def test_distinct_points_are_kept(make_point, small_circle) -> None:
    registry = SolutionRegistry(np.full(small_circle.node_count, 0.1), threshold=1e-4)
    assert registry.add(make_point(1.0, "a"))
    assert registry.add(make_point(-1.0, "b"))
    assert not registry.add(make_point(1.0 + 1e-7, "c"))
    assert [p.tag for p in registry.points] == ["a", "b"]


def test_nearest_and_contains(make_point, small_circle) -> None:
    registry = SolutionRegistry(np.ones(small_circle.node_count))
    registry.extend([make_point(0.0, "zero"), make_point(1.0, "one")])
    match, distance = registry.nearest(np.full(small_circle.node_count, 0.9))
    assert match is not None and match.tag == "one"
    assert distance > 0
    assert registry.contains(np.ones(small_circle.node_count))
    assert not registry.contains(np.full(small_circle.node_count, 0.5))


def test_empty_registry(small_circle) -> None:
    registry = SolutionRegistry(np.ones(small_circle.node_count))
    assert registry.nearest(np.zeros(small_circle.node_count)) == (None, float("inf"))
    assert len(registry) == 0


def test_concurrent_adds_keep_one_copy(make_point, small_circle) -> None:
    registry = SolutionRegistry(np.ones(small_circle.node_count))
    points = [make_point(0.5, f"p{i}") for i in range(8)]
    threads = [threading.Thread(target=registry.add, args=(p,)) for p in points]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(registry) == 1
