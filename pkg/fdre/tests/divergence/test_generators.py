"""Tests for fdre.divergence.generators."""

from pytest import raises

import numpy as np

from fdre.autodiff.tensor import Tape, backward
from fdre.autodiff.ops import tsum
from fdre.divergence.generators import *

###################################################################################################
###################################################################################################

LABELS = ['kl', 'pearson_chi2', 'squared_hellinger', 'gan', 'alpha:0.5', 'alpha:0.2']
GRID = np.logspace(-4, 4, 801)

def test_get_generator():

    assert get_generator('kl').name == 'kl'
    assert get_generator('alpha').alpha == DEFAULT_ALPHA
    assert get_generator('alpha') == get_generator('alpha:0.5')
    assert get_generator('Alpha:0.25').label == 'alpha:0.25'
    assert len({get_generator('alpha'), get_generator('alpha:0.5')}) == 1

    gen = get_generator('gan')
    assert get_generator(gen) is gen

def test_get_generator_errors():

    for name in ['bad', 'alpha:1.5', 'alpha:0', 'alpha:x', 'kl:0.5']:
        with raises(ValueError):
            get_generator(name)

def test_normalization():

    for label in LABELS:
        assert abs(float(get_generator(label).f(1.))) < 1e-15

def test_legendre_identity():

    for label in LABELS:

        gen = get_generator(label)
        f_vals = gen.f(GRID)
        legendre = GRID * gen.f_prime(GRID) - f_vals

        assert np.all(np.abs(gen.conj_of_fprime(GRID) - legendre) <= 1e-9 * (1 + np.abs(f_vals)))

def test_convexity():

    for label in LABELS:
        assert np.all(get_generator(label).f_double_prime(GRID) > 0)

def test_derivatives():

    grid, step = np.linspace(0.2, 5., 25), 1e-5

    for label in LABELS:

        gen = get_generator(label)

        first = (gen.f(grid + step) - gen.f(grid - step)) / (2 * step)
        second = (gen.f_prime(grid + step) - gen.f_prime(grid - step)) / (2 * step)
        third = (gen.f_double_prime(grid + step) - gen.f_double_prime(grid - step)) / (2 * step)

        assert np.allclose(gen.f_prime(grid), first, rtol=1e-6, atol=1e-8)
        assert np.allclose(gen.f_double_prime(grid), second, rtol=1e-6, atol=1e-8)
        assert np.allclose(gen.f_triple_prime(grid), third, rtol=1e-6, atol=1e-8)

def test_table_values():

    # Values at u = 1 of f' and f*(f') for each divergence
    expected = {'kl' : (1., 1.), 'pearson_chi2' : (0., 0.), 'squared_hellinger' : (0., 0.),
                'gan' : (-LOG2, -LOG2), 'alpha:0.5' : (0., 0.)}

    for label, (f_prime, conj) in expected.items():
        gen = get_generator(label)
        assert np.isclose(gen.f_prime(1.), f_prime)
        assert np.isclose(gen.conj_of_fprime(1.), conj)

def test_generators_on_tape():

    for label in LABELS:

        gen = get_generator(label)

        tape = Tape()
        uu = tape.watch([0.5, 2.])
        grads = backward(tape, tsum(gen.f(uu)))

        assert np.allclose(grads[0], gen.f_prime(np.array([0.5, 2.])))
