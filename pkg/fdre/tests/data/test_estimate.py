"""Tests for fdre.data.estimate."""

import numpy as np

from fdre.data.estimate import *

###################################################################################################
###################################################################################################

def test_estimate():

    est = Estimate(2., 0.1)
    value, stderr = est

    assert (value, stderr) == (2., 0.1)
    assert est.value == 2.
    assert np.isnan(Estimate(1., np.nan).stderr)
