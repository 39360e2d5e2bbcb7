import numpy as np

from maxsobolev.grid import BoxDomain, GridFunction, TestFunctionSpec, sample
from maxsobolev.maximal import MaximalConfig
from maxsobolev.utilities.benchmarking import benchmark

ROUNDS = 5


def _random_field(dim, resolution):
    domain = BoxDomain.cube(0.0, 1.0, resolution, dim)
    return GridFunction(domain, np.random.default_rng(0).random(domain.shape))


@benchmark(rounds=ROUNDS, group="1D")
def test_random_1d_cube():
    return _random_field(1, 4096), None


@benchmark(rounds=ROUNDS, group="1D", window_shape="ball")
def test_random_1d_ball():
    return _random_field(1, 4096), None


@benchmark(rounds=ROUNDS, group="2D")
def test_random_2d_cube():
    return _random_field(2, 256), None


@benchmark(rounds=ROUNDS, group="2D", window_shape="ball")
def test_random_2d_ball():
    return _random_field(2, 256), None


@benchmark(rounds=ROUNDS, group="2D")
def test_truncated_bump_2d_cube():
    domain = BoxDomain.cube(-1.0, 1.0, 256, 2)
    return (sample(TestFunctionSpec("bump", (1.0, 0.5, 0.0, 0.0)), domain),
            MaximalConfig(truncation=0.1))


@benchmark(rounds=ROUNDS, group="3D")
def test_random_3d_cube():
    return _random_field(3, 48), None
