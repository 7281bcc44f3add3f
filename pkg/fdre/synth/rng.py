"""Seeded random number streams, derived from a master seed."""

import numpy as np

###################################################################################################
###################################################################################################

# Fixed codes for the named streams, so derived streams do not depend on string hashing
STREAM_CODES = {'P' : 1, 'Q' : 2, 'mu' : 3,
                'train' : 11, 'val' : 12, 'test' : 13,
                'directions' : 21, 'model' : 22, 'shuffle' : 23,
                'lipschitz' : 24, 'moments' : 25, 'nn' : 26}


def derive_rng(seed, *keys):
    """Derive an independent random generator for a set of keys, from a master seed.

    Parameters
    ----------
    seed : int
        Master seed, a non-negative integer.
    *keys : int or str
        Keys identifying the stream, such as a trial index, a split and a source.

    Returns
    -------
    numpy.random.Generator
        A PCG64 generator for the stream.

    Examples
    --------
    Streams with the same keys are identical, and streams with different keys are independent:

    >>> a, b = derive_rng(0, 3, 'train', 'P'), derive_rng(0, 3, 'train', 'P')
    >>> float(a.random()) == float(b.random())
    True
    """

    if int(seed) != seed or seed < 0:
        raise ValueError('The master seed must be a non-negative integer.')

    spawn_key = tuple(_key_code(key) for key in keys)
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=spawn_key)

    return np.random.Generator(np.random.PCG64(seq))


def _key_code(key):
    """Get the integer code for a stream key."""

    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        if key < 0:
            raise ValueError('Integer stream keys must be non-negative.')
        return int(key)

    if isinstance(key, str):
        return STREAM_CODES.get(key, int.from_bytes(key.encode(), 'little'))

    raise ValueError('Stream key {} not understood.'.format(key))
