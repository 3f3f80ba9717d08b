"""Long holes, tree-width, k-blocks and short subdivisions: exact desk-scale
algorithms with checkable certificates."""

from .blocks import Block, find_k_blocks, inseparability_graph, is_k_block
from .budget import Budget, BudgetExceeded
from .chordality import Hole, enumerate_holes, find_long_hole, is_chordal, is_l_chordal
from .erdos_posa import Cover, Packing, pack_or_cover
from .graph import Graph, PathSystem, Separation, Violation, menger_paths, min_vertex_cut
from .treewidth import TreeDecomposition, torso, treewidth_exact, validate_decomposition
from .witnesses import KssWitness, PipelineConfig, SubdivisionWitness, find_kss, pipeline

__version__ = "0.1.0"
