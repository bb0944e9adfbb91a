"""Product set-labelings of graphs.

Exact product/quotient set algebra (``setalgebra``), a small graph model
(``graph``), classifiers for every labeling class (``labeling``),
constructive labelers (``constructors``) and brute-force theorem checks
(``oracle``).
"""

from ._backend import BACKEND
from .constructors import (
    ConstructionError,
    ConstructionParams,
    NotBipartiteError,
    construct_isogeometric,
    construct_like_geometric,
    construct_strong_like_geometric,
    construct_uniform_isogeometric,
)
from .graph import Graph, GraphError, bipartition, build_graph, find_odd_cycle, neighbors
from .labeling import (
    ANY_RATIO,
    ClassificationReport,
    Labeling,
    characteristic_index,
    classify,
    edge_label,
    is_geometric,
    is_isogeometric,
    is_like_geometric,
    is_set_indexer,
    is_strong,
    is_strong_via_quotients,
    is_uniform,
    predicted_edge_size,
    validate_labeling,
)
from .setalgebra import (
    GPDescriptor,
    LabelError,
    LabelSet,
    cardinality_bounds,
    characteristic_exponent,
    detect_gp,
    is_minimal_product_pair,
    product_set,
    quotient_set,
)

__version__ = "0.1.0"
