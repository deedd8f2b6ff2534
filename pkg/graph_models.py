from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BruhatEdge(BaseModel):
    """Oriented edge alpha_i -> alpha_j of the quantum Bruhat graph"""
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    weight: int = Field(..., ge=1, description="c1-hat matrix entry")
    q_power: int = Field(0, ge=0, description="q-power of the Chevalley term")


class QuantumBruhatGraph(BaseModel):
    """Directed graph with one edge per positive Chevalley term"""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...] = Field(..., min_length=1, description="Basis names, file order")
    edges: Tuple[BruhatEdge, ...] = ()
    fano_index: int = Field(..., ge=1)
    degrees: Tuple[int, ...] = Field((), description="Cohomological degree per vertex, if known")
    name: str = "graph"

    @model_validator(mode="after")
    def _check_edges(self) -> "QuantumBruhatGraph":
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("Vertex names must be unique")
        if self.degrees and len(self.degrees) != len(self.vertices):
            raise ValueError("One degree per vertex is required")
        known = set(self.vertices)
        pairs = set()
        for edge in self.edges:
            if edge.source not in known or edge.target not in known:
                raise ValueError(f"Edge {edge.source}->{edge.target} leaves the vertex set")
            if (edge.source, edge.target) in pairs:
                raise ValueError(f"Parallel edge {edge.source}->{edge.target}")
            pairs.add((edge.source, edge.target))
        return self

    def index_of(self, name: str) -> int:
        return self.vertices.index(name)

    def successors(self) -> List[List[int]]:
        """Adjacency lists by vertex index, ascending"""
        position = {name: index for index, name in enumerate(self.vertices)}
        adjacency: List[List[int]] = [[] for _ in self.vertices]
        for edge in self.edges:
            adjacency[position[edge.source]].append(position[edge.target])
        return [sorted(targets) for targets in adjacency]

    def edge_between(self, source: str, target: str) -> Optional[BruhatEdge]:
        for edge in self.edges:
            if edge.source == source and edge.target == target:
                return edge
        return None


class ConnectivityResult(BaseModel):
    """Strongly connected component decomposition"""
    model_config = ConfigDict(frozen=True)

    strongly_connected: bool
    component_count: int = Field(..., ge=1)
    component_of: Dict[str, int] = Field(..., description="Component id, numbered by lowest vertex index")

    def components(self) -> List[List[str]]:
        grouped: List[List[str]] = [[] for _ in range(self.component_count)]
        for name, component in self.component_of.items():
            grouped[component].append(name)
        return grouped


class PeriodResult(BaseModel):
    """Index of imprimitivity of a strongly connected graph"""
    model_config = ConfigDict(frozen=True)

    period: int = Field(..., ge=1)
    divides_fano_index: bool
    equals_fano_index: bool


class Cycle(BaseModel):
    """Closed walk v0, v1, ..., v0"""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...] = Field(..., min_length=2, description="First and last entries coincide")
    length: int = Field(..., ge=1)
    simple: bool = Field(True, description="False when only a non-simple closed walk was found")

    @model_validator(mode="after")
    def _check_closed(self) -> "Cycle":
        if self.vertices[0] != self.vertices[-1]:
            raise ValueError("A cycle must end where it starts")
        if self.length != len(self.vertices) - 1:
            raise ValueError("Cycle length must equal the number of steps")
        return self


class DotOptions(BaseModel):
    """Rendering options for DOT export"""
    model_config = ConfigDict(frozen=True)

    highlight: Tuple[str, ...] = Field((), description="Closed walk v0,...,v0 drawn bold")
    show_weights: bool = False
    rank_by_degree: bool = True
