# graphs/dot.py
"""
Text and image output of the method graphs.
"""
import matplotlib.pyplot as plt
import networkx as nx

from .models import Cfg, Pdg, Cdg, ENTRY


def _name(method) -> str:
    return method.qualified_name.replace('.', '_')


def cfg_to_dot(cfg: Cfg) -> str:
    """
    :param cfg: A control flow graph.
    :return: The graph in DOT format, one node per basic block.
    """
    lines = [f'digraph cfg_{_name(cfg.method)} {{']
    for b in cfg.blocks:
        lines.append(f'  B{b.id} [label="B{b.id}: {", ".join(str(s) for s in b.stmts)}"];')
    for u, v, loopback in sorted(cfg.edges()):
        lines.append(f'  B{u} -> B{v} [kind=flow, loopback={str(loopback).lower()}];')
    return '\n'.join(lines + ['}']) + '\n'


def pdg_to_dot(pdg: Pdg) -> str:
    """
    :param pdg: A program dependence graph.
    :return: The graph in DOT format. Node labels are statement ids, ENTRY is labelled entry.
    """
    lines = [f'digraph pdg_{_name(pdg.method)} {{']
    for n in pdg.nodes:
        lines.append(f'  {n} [label="{"entry" if n == ENTRY else n}"];')
    for p, c in sorted(pdg.control_edges):
        lines.append(f'  {p} -> {c} [kind=control];')
    for d, u, v in sorted(pdg.data_edges):
        lines.append(f'  {d} -> {u} [kind=data, variable="{v}"];')
    for d, s, v in sorted(pdg.decl_edges):
        lines.append(f'  {d} -> {s} [kind=decl, variable="{v}"];')
    return '\n'.join(lines + ['}']) + '\n'


def cdg_to_dot(cdg: Cdg) -> str:
    """
    :param cdg: A control dependence graph.
    :return: The graph in DOT format.
    """
    lines = [f'digraph cdg_{_name(cdg.method)} {{']
    for n in sorted(cdg.graph.nodes):
        lines.append(f'  {n} [label="{"entry" if n == ENTRY else n}"];')
    for p, c in sorted(cdg.edges):
        lines.append(f'  {p} -> {c} [kind=control];')
    return '\n'.join(lines + ['}']) + '\n'


def draw_graph(graph: Cfg | Pdg | Cdg, show: bool = True, path: str = None):
    """
    Draws a method graph using matplotlib.

    :param graph: The CFG, PDG or CDG to draw.
    :param show: If true the graph will be displayed in a plt figure.
    :param path: The path and file_name where the graph should be saved. If None, the graph won't be saved.
    """
    if isinstance(graph, Cfg):
        g = nx.relabel_nodes(graph.graph, {b.id: f'B{b.id}' for b in graph.blocks})
        edge_labels = {(f'B{u}', f'B{v}'): 'loop' for u, v, loop in graph.edges() if loop}
        color = 'grey'
    else:
        g = nx.DiGraph(graph.graph)
        g = nx.relabel_nodes(g, {ENTRY: 'entry'})
        edge_labels = {(u, v): d.get('variable', '') for u, v, d in g.edges(data=True)}
        color = ['grey' if d.get('kind') == 'data' else 'black' for _, _, d in g.edges(data=True)]
    fig, ax = plt.subplots(figsize=(0.6 * len(g) + 4, 0.5 * len(g) + 3))
    ax.axis('off')
    pos = nx.spring_layout(g, scale=2, seed=0)
    nx.draw_networkx(g, pos, node_size=600, alpha=0.9, node_shape='s', edge_color=color,
                     connectionstyle='arc3,rad=0.1', font_color='black', ax=ax)
    nx.draw_networkx_edge_labels(g, pos, edge_labels, label_pos=0.5, font_color='black',
                                 bbox={"alpha": 0.9, "color": "white"}, ax=ax)
    if path is not None:
        fig.savefig(path)
    if show:
        fig.show()
    else:
        plt.close(fig)
