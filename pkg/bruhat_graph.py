import logging
from collections import deque
from math import gcd
from typing import Dict, List, Optional, Sequence, Set

import networkx as nx

from config import config
from models import ChevalleyTable, OperatorMatrix
from graph_models import (
    BruhatEdge, ConnectivityResult, Cycle, DotOptions, PeriodResult, QuantumBruhatGraph
)

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)


class GraphError(ValueError):
    """Raised for graph questions that have no answer (undefined period, invalid cycle)"""
    pass


def build_graph(table: ChevalleyTable) -> QuantumBruhatGraph:
    """
    Build the quantum Bruhat graph of a graded table

    Args:
        table: Validated Chevalley table

    Returns:
        Graph with an edge alpha_i -> alpha_j for every positive term of h * alpha_i
    """
    edges = [
        BruhatEdge(
            source=source,
            target=term.target,
            weight=table.anticanonical_multiple * term.coefficient,
            q_power=term.q_power
        )
        for source in table.names
        for term in table.rows[source]
    ]
    graph = QuantumBruhatGraph(
        vertices=tuple(table.names),
        edges=tuple(edges),
        fano_index=table.fano_index,
        degrees=tuple(element.degree for element in table.basis),
        name=table.name
    )
    logger.info(f"Built quantum Bruhat graph '{table.name}': {len(graph.vertices)} vertices, {len(edges)} edges")
    return graph


def graph_from_matrix(matrix: OperatorMatrix, fano_index: int = 1) -> QuantumBruhatGraph:
    """Support graph of a matrix: edge i -> j whenever entries[j][i] > 0"""
    labels = matrix.labels or tuple(f"v{i}" for i in range(matrix.dim))
    edges = [
        BruhatEdge(source=labels[i], target=labels[j], weight=matrix.entries[j][i])
        for i in range(matrix.dim)
        for j in range(matrix.dim)
        if matrix.entries[j][i] > 0
    ]
    return QuantumBruhatGraph(vertices=labels, edges=tuple(edges), fano_index=fano_index)


def to_networkx(graph: QuantumBruhatGraph) -> nx.DiGraph:
    """DiGraph on vertex indices 0..n-1 carrying weight and q_power attributes"""
    position = {name: index for index, name in enumerate(graph.vertices)}
    digraph = nx.DiGraph()
    digraph.add_nodes_from((index, {"name": name}) for index, name in enumerate(graph.vertices))
    for edge in graph.edges:
        digraph.add_edge(
            position[edge.source], position[edge.target],
            weight=edge.weight, q_power=edge.q_power
        )
    return digraph


def strongly_connected(graph: QuantumBruhatGraph) -> ConnectivityResult:
    """
    Strongly connected component decomposition

    Args:
        graph: Any quantum Bruhat graph

    Returns:
        ConnectivityResult; component ids are ordered by the lowest vertex index they contain
    """
    components = sorted(
        (sorted(component) for component in nx.strongly_connected_components(to_networkx(graph))),
        key=lambda component: component[0]
    )
    component_id: Dict[int, int] = {}
    for number, component in enumerate(components):
        for vertex in component:
            component_id[vertex] = number

    result = ConnectivityResult(
        strongly_connected=len(components) == 1,
        component_count=len(components),
        component_of={name: component_id[index] for index, name in enumerate(graph.vertices)}
    )
    logger.info(f"Graph '{graph.name}' has {result.component_count} strongly connected component(s)")
    return result


def bfs_levels(graph: QuantumBruhatGraph, root: int = 0) -> Dict[int, int]:
    """BFS distance of every reachable vertex from the root index"""
    return dict(nx.single_source_shortest_path_length(to_networkx(graph), root))


def period(graph: QuantumBruhatGraph) -> PeriodResult:
    """
    Period of a strongly connected graph

    The period is the gcd over all edges u -> v of level(u) + 1 - level(v),
    with levels the BFS distances from vertex 0.

    Args:
        graph: Strongly connected graph with at least one edge

    Returns:
        PeriodResult compared against the graph's Fano index

    Raises:
        GraphError: if the graph is not strongly connected or has no edges
    """
    if not graph.edges:
        raise GraphError(f"Period of '{graph.name}' is undefined: the graph has no edges")
    if not strongly_connected(graph).strongly_connected:
        raise GraphError(f"Period of '{graph.name}' is undefined: the graph is not strongly connected")

    levels = bfs_levels(graph)
    position = {name: index for index, name in enumerate(graph.vertices)}
    value = 0
    for edge in graph.edges:
        u, v = position[edge.source], position[edge.target]
        value = gcd(value, abs(levels[u] + 1 - levels[v]))

    result = PeriodResult(
        period=value,
        divides_fano_index=graph.fano_index % value == 0,
        equals_fano_index=value == graph.fano_index
    )
    logger.info(f"Graph '{graph.name}' has period {value} (Fano index {graph.fano_index})")
    return result


def _distances_back(successors: List[List[int]], start: int) -> Dict[int, int]:
    """Shortest distance from each vertex >= start back to start, using only vertices >= start"""
    predecessors: List[List[int]] = [[] for _ in successors]
    for u, targets in enumerate(successors):
        for v in targets:
            predecessors[v].append(u)
    distance = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in predecessors[v]:
            if u >= start and u not in distance:
                distance[u] = distance[v] + 1
                queue.append(u)
    return distance


def _simple_cycle(successors: List[List[int]], start: int, length: int) -> Optional[List[int]]:
    distance = _distances_back(successors, start)
    path = [start]
    on_path = {start}

    def extend(v: int) -> Optional[List[int]]:
        depth = len(path) - 1
        for w in successors[v]:
            if w == start:
                if depth + 1 == length:
                    return path + [start]
                continue
            if w < start or w in on_path:
                continue
            remaining = length - depth - 1
            if distance.get(w, length + 1) > remaining:
                continue
            path.append(w)
            on_path.add(w)
            found = extend(w)
            if found:
                return found
            path.pop()
            on_path.discard(w)
        return None

    return extend(start)


def _closed_walk(successors: List[List[int]], start: int, length: int) -> Optional[List[int]]:
    layers: List[Set[int]] = [{start}]
    for _ in range(length):
        layers.append({w for v in layers[-1] for w in successors[v]})
    if start not in layers[length]:
        return None
    walk = [start]
    for k in range(length - 1, -1, -1):
        following = walk[0]
        walk.insert(0, min(v for v in layers[k] if following in successors[v]))
    return walk


def find_cycle_of_length(graph: QuantumBruhatGraph, length: int) -> Optional[Cycle]:
    """
    Find a closed walk of exactly the requested length

    Vertex-simple cycles are searched first by DFS in ascending vertex order,
    each cycle rooted at its lowest-index vertex. If none exists, a non-simple
    closed walk of that length is returned with simple=False.

    Args:
        graph: Any quantum Bruhat graph
        length: Requested cycle length L >= 1

    Returns:
        Cycle, or None if no closed walk of length L exists
    """
    if length < 1:
        raise ValueError(f"Cycle length must be positive, got {length}")
    successors = graph.successors()

    for start in range(len(graph.vertices)):
        found = _simple_cycle(successors, start, length)
        if found:
            return Cycle(vertices=tuple(graph.vertices[i] for i in found), length=length, simple=True)

    for start in range(len(graph.vertices)):
        walk = _closed_walk(successors, start, length)
        if walk:
            logger.warning(f"No simple {length}-cycle in '{graph.name}'; returning a closed walk")
            return Cycle(vertices=tuple(graph.vertices[i] for i in walk), length=length, simple=False)

    logger.info(f"No closed walk of length {length} in '{graph.name}'")
    return None


def is_valid_cycle(graph: QuantumBruhatGraph, vertices: Sequence[str]) -> bool:
    """True iff vertices is a closed walk v0 ... v0 along edges of the graph"""
    if len(vertices) < 2 or vertices[0] != vertices[-1]:
        return False
    pairs = {(edge.source, edge.target) for edge in graph.edges}
    return all((u, v) in pairs for u, v in zip(vertices, vertices[1:]))


def cycle_from_names(graph: QuantumBruhatGraph, vertices: Sequence[str]) -> Cycle:
    """Turn a user-supplied vertex list into a validated Cycle"""
    if not is_valid_cycle(graph, vertices):
        raise GraphError(f"'{','.join(vertices)}' is not a closed walk of '{graph.name}'")
    body = list(vertices[:-1])
    return Cycle(vertices=tuple(vertices), length=len(vertices) - 1, simple=len(set(body)) == len(body))


def _dot_id(text: str) -> str:
    """Double-quoted DOT identifier"""
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def export_dot(graph: QuantumBruhatGraph, options: Optional[DotOptions] = None) -> str:
    """
    Render the graph as a Graphviz digraph

    Vertices are ranked by cohomological degree (BFS level when degrees are
    unknown). Quantum edges are dashed and do not constrain the ranking.

    Args:
        graph: Graph to render
        options: Highlight cycle and label settings

    Returns:
        DOT source text
    """
    options = options or DotOptions()
    highlighted = set()
    if options.highlight:
        cycle = cycle_from_names(graph, options.highlight)
        highlighted = set(zip(cycle.vertices, cycle.vertices[1:]))

    lines = [f"digraph {_dot_id(graph.name)} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
    for name in graph.vertices:
        lines.append(f'  "{name}";')

    if options.rank_by_degree:
        if graph.degrees:
            rank = dict(zip(graph.vertices, graph.degrees))
        else:
            rank = {graph.vertices[index]: level for index, level in bfs_levels(graph).items()}
        for level in sorted(set(rank.values())):
            members = " ".join(f'"{name}";' for name in graph.vertices if rank.get(name) == level)
            lines.append(f"  {{ rank=same; {members} }}")

    for edge in graph.edges:
        attributes = []
        if options.show_weights:
            attributes.append(f'label="{edge.weight}"')
        if edge.q_power > 0:
            attributes.append("constraint=false")
        if (edge.source, edge.target) in highlighted:
            attributes.append("style=bold")
            attributes.append("penwidth=2.5")
        elif edge.q_power > 0:
            attributes.append("style=dashed")
        suffix = f" [{', '.join(attributes)}]" if attributes else ""
        lines.append(f'  "{edge.source}" -> "{edge.target}"{suffix};')

    lines.append("}")
    return "\n".join(lines) + "\n"
