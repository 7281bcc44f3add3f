"""Tests for fdre.synth.rng."""

from pytest import raises

import numpy as np

from fdre.synth.rng import *

###################################################################################################
###################################################################################################

def test_derive_rng():

    rng = derive_rng(0, 1, 'train', 'P')
    assert isinstance(rng, np.random.Generator)
    assert isinstance(rng.bit_generator, np.random.PCG64)

def test_derive_rng_streams():

    first = derive_rng(7, 2, 'val', 'Q').random(5)

    assert np.array_equal(first, derive_rng(7, 2, 'val', 'Q').random(5))
    assert not np.array_equal(first, derive_rng(7, 2, 'val', 'P').random(5))
    assert not np.array_equal(first, derive_rng(7, 3, 'val', 'Q').random(5))
    assert not np.array_equal(first, derive_rng(8, 2, 'val', 'Q').random(5))

def test_derive_rng_unnamed_keys():

    assert np.array_equal(derive_rng(0, 'kl_sweep').random(3),
                          derive_rng(0, 'kl_sweep').random(3))

def test_derive_rng_errors():

    with raises(ValueError):
        derive_rng(-1)
    with raises(ValueError):
        derive_rng(0, -2)
    with raises(ValueError):
        derive_rng(0, 1.5)
