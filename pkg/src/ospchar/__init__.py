"""Exact computer algebra for OSp(1|2) character-variety invariants.

The package is organized around six layers:

* ``grassmann``   -- arithmetic in the Grassmann algebra (exact or float),
* ``superlinalg`` -- supermatrices: products, supertranspose, supertrace,
                     Berezinian, Leibniz determinants, ranks over the algebra,
* ``osp``         -- OSp(1|2) group elements and their membership equations,
* ``normalform``  -- simultaneous triangulation and Hensel root lifting,
* ``invariants``  -- polarization, trace products, Gram data and the
                     relation/generator censuses,
* ``charvar``/``cli`` -- free-group words, representations, and the CLI.
"""

__version__ = "0.1.0"

from .errors import (
    CentralError,
    DeterminantError,
    DomainError,
    ExactnessError,
    InsufficientSamplesError,
    MembershipError,
    ModeMismatchError,
    NumericalError,
    OspCharError,
    ParityError,
    PreconditionError,
    ShapeError,
    SingularRootError,
    WordSyntaxError,
    ZeroBodyError,
)
from .grassmann import (
    EXACT,
    FLOAT,
    GrassmannElement,
    QQi,
    analytic_apply,
    body,
    gadd,
    ginv,
    gmul,
    soul,
)
from .superlinalg import (
    ST_SIGNS,
    SuperMatrix,
    SuperVector,
    berezinian,
    calibrate_supertranspose,
    j_matrix,
    lambda_rank,
    leibniz_det,
    pairing,
    smul,
    supertranspose,
    supertrace,
)
from .osp import (
    OSpElement,
    check_membership,
    compose_general,
    exp_odd,
    from_sl2,
    inverse,
    reduce_body,
    z2_flip,
)
from .normalform import (
    FrickeCoords,
    LambdaPolynomial,
    NormalFormRecord,
    fricke_coords,
    hensel_lift_root,
    osp_triangulate,
    sl2_triangulate,
)
from .invariants import (
    CensusResult,
    PermutationInvariant,
    SuperPolyRing,
    SuperPolynomial,
    end_to_tensor,
    generator_census,
    gram_matrix,
    matching_invariant,
    mu_sigma,
    parity_audit,
    polarize,
    relation_census,
    restitute,
    tensor_to_end,
    trace_word,
)
from .charvar import FreeWord, RepresentationPair, evaluate_word, parse_word
from .cli import cli_main
