"""
Seeded, counter-based random generators.

Every random draw in the library goes through `make_rng`, which mixes the user seed with a
fixed tag for the kind of instance being drawn, so that (for example) a Haar table and a
random polynomial built from the same seed use independent streams.
"""
import numpy as np

from gowers_lab.errors import ParameterError

STREAM_TAGS = {
    "polynomial": 0x504F4C59,
    "haar": 0x48414152,
    "subset": 0x53554253,
    "sampling": 0x53414D50,
    "farness": 0x46415221,
}


def make_rng(seed: int, kind: str) -> np.random.Generator:
    """Philox generator keyed by (seed, kind); identical on every platform"""
    if kind not in STREAM_TAGS:
        raise ParameterError(f"Unknown random stream kind '{kind}'")
    if seed < 0:
        raise ParameterError(f"Seeds must be nonnegative, got {seed}")
    sequence = np.random.SeedSequence([int(seed), STREAM_TAGS[kind]])
    return np.random.Generator(np.random.Philox(sequence))
