"""Synthetic problems with known density ratios."""

from .rng import derive_rng
from .mixture import (MixtureSpec, make_mixture_spec, true_ratio, log_ratio, energy,
                      mu_densities, analytic_kl)
from .samples import (SampleSet, Source, Split, sample_p, sample_q, sample_mu, make_splits,
                      empirical_diag)
