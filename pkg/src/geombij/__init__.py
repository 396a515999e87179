"""Spanning-tree / break-divisor bijections on finite graphs."""

from .divisors import Divisor, q_reduce
from .graph import Cycle, Multigraph, parse_graph
from .orientations import Orientation

__version__ = "0.1.0"
