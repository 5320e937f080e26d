"""Finitely generated subgroups of free groups, computed with labeled graph immersions."""

from .core_graph import (Alphabet, DirectedEnd, Edge, LabeledGraph, Walk, arcs, bouquet, components, core,
                         degree, euler_characteristic, is_core, link, rank, reduced_rank)
from .errors import InvalidArgument, InvalidOracle, PreconditionViolation, WordParseError
from .stallings import (GraphMap, accepts, build_subgroup_graph, canonical_form, canonical_key, fold_all,
                        is_immersion, wedge_of_cycles)
from .words import Letter, Word, format_word, parse_word, parse_word_list

__version__ = "0.1.0"
