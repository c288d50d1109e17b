"""
stabkit: exact certification of stable polynomials and stability preservers.

Key modules:
    - polycore.py  : Gaussian rationals, sparse polynomials, matrices
    - realroots.py : Sturm chains, root isolation, interlacing, proper position
    - stability.py : stability deciders and the seeded line sampler
    - weylalg.py   : Weyl-algebra operators, symbols, composition, adjoints
    - preservers.py: symbol tests, multipliers, compositions, strict preservers
    - pencils.py   : determinantal pencils and matrix identities
    - cli.py       : the stabkit command line
"""

__version__ = "1.0.0"

from .config import CorpusConfig, SampleConfig
from .polycore import GaussianMatrix, GaussRat, MultiPoly, UniPoly
from .stability import check_stable, check_strictly_stable
from .weylalg import WeylOp, symbol

__all__ = [
    "__version__",
    "CorpusConfig",
    "SampleConfig",
    "GaussianMatrix",
    "GaussRat",
    "MultiPoly",
    "UniPoly",
    "check_stable",
    "check_strictly_stable",
    "WeylOp",
    "symbol",
]
