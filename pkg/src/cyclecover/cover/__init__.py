from .core import (BOUNDS, BoundCheck, ChordParityPartition, CoverReport, CycleCover,
                   chord_parity_partition, cover_problems, verify_bound)
from .general import cover_general
from .cubic import cover_cubic
from .mindeg3 import cover_mindeg3
from .reductions import Reduction, reduce_parallel
