"""Certain Bayesian networks with crisp and fuzzy certainty degrees.

Min-based possibilistic networks over binary attributes, their translation
to weighted-clause knowledge bases and back, and fuzzy (alpha-cut) certainty
degrees with defuzzification.  World enumeration runs on compiled kernels
when the extension is built; :data:`KERNEL_BACKEND` names the active one.
"""

from . import _accel
from .degrees import (
    FuzzyDegree,
    ClosedFormTriangle,
    complement,
    defuzzify,
    format_degree,
    from_closed_form,
    fuzzy_min,
    membership,
    parse_degree,
    triangular,
)
from .distribution import (
    Distribution,
    FuzzyWorldSet,
    equivalent,
    fuzzy_necessity_profile,
    fuzzy_possibility_profile,
    necessity,
    possibility,
)
from .errors import (
    CertnetError,
    EnumerationLimitError,
    FileFormatError,
    FormulaSyntaxError,
    UnknownAtomError,
)
from .kb import (
    FuzzyKnowledgeBase,
    KnowledgeBase,
    WeightedFormula,
    compile_fuzzy,
    compile_network,
    compile_node,
    equivalent_kb,
    is_subsumed,
    load_kb,
    minmax_distribution,
    parse_kb,
    recover_distribution,
)
from .logic import (
    Clause,
    Literal,
    World,
    entails,
    enumerate_worlds,
    format_formula,
    models,
    parse_formula,
)
from .network import (
    CertainNetwork,
    ConditionalTable,
    FuzzyCertainNetwork,
    Row,
    defuzzify_network,
    fuzzy_joint,
    joint_distribution,
    load_network,
    local_degree,
    parse_network,
    validate,
)

KERNEL_BACKEND = _accel.BACKEND

__version__ = "0.1.0"
