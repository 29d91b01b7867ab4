"""Divide-and-conquer quantum state preparation.

Synthesizes state-preparation circuits from classical vectors (a sequential
O(N)-depth loader and the O(log^2 N)-depth divide-and-conquer loader with
entangled ancillas) and checks them on an exact statevector simulator.
"""

from .angles import (AngleTree, TreeParams, check_vector, gen_angles, gen_angles_z,
                     left, level, parent, right, tree_params)
from .circuit import Circuit, DepthReport, Gate, decompose, depth, export, from_json
from .dc import (add_orthonormal_labels, ancilla_gram, dc_circuit, dc_prepare,
                 expected_entangled_state, hybrid_circuit)
from .errors import (DimensionError, DistributionError, ExportError, InputError,
                     IRError, NormalizationError, QDCPrepError, ResourceError)
from .registers import PreparedRegister
from .statevector import ShotResult, StateVector, expect_z, marginal, sample, simulate
from .swap_stats import (StatReport, covariance_matrix, cyclic_exy, moment_statistics,
                         swap_test_overlap)
from .topdown import mottonen_circuit

__version__ = "0.1.0"
