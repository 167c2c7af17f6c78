"""
Method level graphs: the control flow graph over basic blocks, the program dependence graph and the control
dependence graph.

>>> from respslice import lang, graphs
>>> program = lang.parse(source)
>>> method = program.method('deleteParent')
>>> cfg = graphs.build_cfg(method)
>>> pdg = graphs.build_pdg(method, cfg, program)
>>> graphs.draw_graph(graphs.build_cdg(pdg))
"""
from .models import BasicBlock, Cfg, CfgEdge, Pdg, Cdg, DataEdge, DefUse, ENTRY, EXIT
from .defuse import CallEffects, EffectAnalysis, DefUseAnalysis, root_key, access_path, expr_uses
from .cfg import build_cfg, statement_flow, dominates
from .pdg import build_pdg, build_cdg, reaching_definitions, definitely_assigned, control_edges
from .dot import cfg_to_dot, pdg_to_dot, cdg_to_dot, draw_graph
