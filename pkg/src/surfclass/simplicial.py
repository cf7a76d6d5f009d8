"""Abstract 2-dimensional simplicial complexes and their homology.

Complexes are pure: every vertex and edge is required to lie in some
triangle (dangling pieces are user error for surface work).  Validators
implement the combinatorial surface conditions: every edge in exactly
two triangles (or one/two for bordered), a single cyclic or linear fan
of triangles around each vertex, and connectivity.

``refine_to_triangulation`` converts any cell complex into a
triangulated one: split every edge, star every face from a central
vertex, then subdivide each triangle into four; the result is handed
over as a simplicial complex with one vertex per vertex class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .cellcomplex import CellComplex, build as build_complex
from .edgeword import EdgeSym
from .errors import DegenerateTriangleError, InternalInvariantViolation
from .intlinalg import FgAbelianGroup, IntMatrix, cokernel, rank, smith_normal_form
from .rewrite import _fresh_start, _split_face, _subst_p1


@dataclass(frozen=True)
class SimplicialComplex2:
    vertices: tuple   # sorted vertex names
    triangles: tuple  # sorted tuples of 3 vertex names, sorted

    @cached_property
    def edges(self) -> tuple:
        out = set()
        for t in self.triangles:
            a, b, c = t
            out.update(((a, b), (a, c), (b, c)))
        return tuple(sorted(out))

    def counts(self):
        return len(self.vertices), len(self.edges), len(self.triangles)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple
    border_circles: int = 0


@dataclass(frozen=True)
class ChainComplexData:
    basis0: tuple
    basis1: tuple
    basis2: tuple
    d1: IntMatrix
    d2: IntMatrix


def build_simplicial(triangles) -> SimplicialComplex2:
    """Build from vertex triples; derives the edge/vertex closure."""
    tris = set()
    verts = set()
    for t in triangles:
        t = tuple(t)
        if len(set(t)) != 3:
            raise DegenerateTriangleError(f"triangle {t} needs 3 distinct vertices")
        tris.add(tuple(sorted(str(v) for v in t)))
        verts.update(str(v) for v in t)
    return SimplicialComplex2(tuple(sorted(verts)), tuple(sorted(tris)))


def _edge_triangles(K: SimplicialComplex2) -> dict:
    out = {e: [] for e in K.edges}
    for t in K.triangles:
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            out[e].append(t)
    return out


def _is_connected(K: SimplicialComplex2) -> bool:
    if not K.triangles:
        return False
    adj = {v: set() for v in K.vertices}
    for a, b in K.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {K.vertices[0]}
    stack = [K.vertices[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(K.vertices)


def _vertex_fans(K: SimplicialComplex2):
    """For each vertex: the graph on incident edges, linked by incident triangles."""
    incident_edges: dict = {v: [] for v in K.vertices}
    for e in K.edges:
        incident_edges[e[0]].append(e)
        incident_edges[e[1]].append(e)
    et = _edge_triangles(K)
    fans = {}
    for v in K.vertices:
        # nodes: incident edges; connect two edges sharing a triangle at v
        links: dict = {e: [] for e in incident_edges[v]}
        for t in K.triangles:
            if v not in t:
                continue
            others = [u for u in t if u != v]
            e1 = tuple(sorted((v, others[0])))
            e2 = tuple(sorted((v, others[1])))
            links[e1].append(e2)
            links[e2].append(e1)
        fans[v] = links
    return fans, et


def _fan_shape(links: dict):
    """Classify one vertex fan: 'cycle', 'path', or 'bad'."""
    degs = sorted(len(v) for v in links.values())
    nodes = list(links)
    # connectivity of the fan graph
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in links[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(nodes):
        return "bad"
    if all(d == 2 for d in degs):
        return "cycle"
    if degs.count(1) == 2 and all(d in (1, 2) for d in degs):
        return "path"
    return "bad"


def validate_closed_surface(K: SimplicialComplex2) -> ValidationReport:
    """Conditions for a closed surface: edges in two triangles, cyclic
    fans with at least three triangles, connected."""
    violations = []
    et = _edge_triangles(K)
    for e, ts in et.items():
        if len(ts) != 2:
            violations.append(f"D1: edge {e} lies in {len(ts)} triangles, expected 2")
    fans, _ = _vertex_fans(K)
    for v, links in fans.items():
        if not links:
            violations.append(f"D2: vertex {v} has no incident edges")
            continue
        shape = _fan_shape(links)
        if shape != "cycle" or len(links) < 3:
            violations.append(f"D2: vertex {v} fan is not a single cycle (m >= 3)")
    if not _is_connected(K):
        violations.append("D3: complex is not connected")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def validate_bordered_surface(K: SimplicialComplex2) -> ValidationReport:
    """Conditions for a bordered surface: interior edges in two
    triangles, border edges in one, linear fans at border vertices.

    The two ends of a border vertex's fan must be border *edges* (each
    contained in a single triangle); the interior of the fan alternates
    interior edges and triangles."""
    violations = []
    et = _edge_triangles(K)
    border_edges = set()
    for e, ts in et.items():
        if len(ts) == 1:
            border_edges.add(e)
        elif len(ts) != 2:
            violations.append(f"D1: edge {e} lies in {len(ts)} triangles")
    border_vertices = {v for e in border_edges for v in e}
    fans, _ = _vertex_fans(K)
    for v, links in fans.items():
        if not links:
            violations.append(f"D2: vertex {v} has no incident edges")
            continue
        shape = _fan_shape(links)
        if v in border_vertices:
            ok = shape == "path" and all(
                e in border_edges for e in links if len(links[e]) == 1
            )
            if not ok:
                violations.append(
                    f"D3: border vertex {v} fan is not a single border-to-border path"
                )
        elif shape != "cycle" or len(links) < 3:
            violations.append(f"D2: interior vertex {v} fan is not a single cycle")
    if not _is_connected(K):
        violations.append("D4: complex is not connected")
    circles = _count_border_circles(border_edges)
    return ValidationReport(
        ok=not violations, violations=tuple(violations), border_circles=circles
    )


def _count_border_circles(border_edges) -> int:
    adj: dict = {}
    for a, b in border_edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = set()
    circles = 0
    for start in sorted(adj):
        if start in seen:
            continue
        circles += 1
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return circles


# ---------------------------------------------------------------------------
# chain complex and homology


def boundary_matrices(K: SimplicialComplex2) -> ChainComplexData:
    """Boundary operators with ascending-name reference orientations.

    For an edge (a, b) with a < b the boundary is b - a; for a triangle
    (a, b, c) with a < b < c it is (b, c) - (a, c) + (a, b).
    """
    v_index = {v: i for i, v in enumerate(K.vertices)}
    e_index = {e: i for i, e in enumerate(K.edges)}
    d1_rows = [[0] * len(K.edges) for _ in K.vertices]
    for j, (a, b) in enumerate(K.edges):
        d1_rows[v_index[a]][j] -= 1
        d1_rows[v_index[b]][j] += 1
    d2_rows = [[0] * len(K.triangles) for _ in K.edges]
    for j, (a, b, c) in enumerate(K.triangles):
        d2_rows[e_index[(b, c)]][j] += 1
        d2_rows[e_index[(a, c)]][j] -= 1
        d2_rows[e_index[(a, b)]][j] += 1
    d1 = IntMatrix.from_rows(d1_rows) if K.vertices else IntMatrix.zeros(0, 0)
    d2 = IntMatrix.from_rows(d2_rows) if K.edges else IntMatrix.zeros(0, 0)
    if not d1.mul(d2).is_zero():
        raise InternalInvariantViolation("boundary of boundary is nonzero")
    return ChainComplexData(K.vertices, K.edges, K.triangles, d1, d2)


def homology(K: SimplicialComplex2):
    """(H0, H1, H2) as finitely generated abelian groups."""
    data = boundary_matrices(K)
    nv, ne, nt = len(K.vertices), len(K.edges), len(K.triangles)
    r1 = rank(data.d1)
    snf2 = smith_normal_form(data.d2)
    r2 = len(snf2)
    h0 = cokernel(nv, data.d1)
    h1 = FgAbelianGroup(ne - r1 - r2, tuple(t for t in snf2 if t > 1))
    h2 = FgAbelianGroup(nt - r2, ())
    return h0, h1, h2


def euler_simplicial(K: SimplicialComplex2) -> int:
    """V - E + T; checked against the alternating sum of Betti numbers."""
    nv, ne, nt = K.counts()
    chi = nv - ne + nt
    h0, h1, h2 = homology(K)
    if chi != h0.free_rank - h1.free_rank + h2.free_rank:
        raise InternalInvariantViolation("counting chi != Betti alternating sum")
    return chi


# ---------------------------------------------------------------------------
# refinement of a cell complex into a triangulation


def _bulk_split_all_edges(faces: dict, counter: list) -> dict:
    for e in sorted({s.name for w in faces.values() for s in w}):
        b, c = f"_g{counter[0]}", f"_g{counter[0] + 1}"
        counter[0] += 2
        faces = {n: _subst_p1(w, e, b, c) for n, w in faces.items()}
    return faces


def _bulk_star_faces(faces: dict, counter: list) -> dict:
    """Cut every face into triangles around a central vertex."""
    out = {}
    for name, w in faces.items():
        n = len(w)
        if n < 2:
            raise InternalInvariantViolation("face too short to star")
        spokes = []
        for _ in range(n):
            spokes.append(f"_g{counter[0]}")
            counter[0] += 1
        for i in range(n):
            prev = EdgeSym(spokes[i - 1], -1)
            nxt = EdgeSym(spokes[i], 1)
            out[f"{name}_t{i}"] = (prev, w[i], nxt)
    return out


def _bulk_quadrisect(faces: dict, counter: list) -> dict:
    """Split every edge, then cut each hexagon into four triangles."""
    faces = _bulk_split_all_edges(faces, counter)
    out = {}
    for name, w in faces.items():
        if len(w) != 6:
            raise InternalInvariantViolation("expected hexagon after edge split")
        e = []
        for _ in range(3):
            e.append(f"_g{counter[0]}")
            counter[0] += 1
        # corners (w1 w2 | e0), (w3 w4 | e1), (w5 w0 | e2), center (e2' e0' e1')
        out[f"{name}_c0"] = (w[1], w[2], EdgeSym(e[0], 1))
        out[f"{name}_c1"] = (w[3], w[4], EdgeSym(e[1], 1))
        out[f"{name}_c2"] = (w[5], w[0], EdgeSym(e[2], 1))
        out[f"{name}_m"] = (
            EdgeSym(e[2], -1),
            EdgeSym(e[0], -1),
            EdgeSym(e[1], -1),
        )
    return out


def _cancel_inverse_pairs(faces: dict) -> dict:
    """Drop cyclically adjacent ``x x'`` pairs from every word.

    Edge splitting cannot separate such a pair (the half-edges stay
    adjacent), and starring one yields two triangles glued along two
    edges whose subdivisions never become vertex-faithful; cancelling
    first is an equivalence and removes the obstruction.
    """
    faces = dict(faces)
    changed = True
    while changed:
        changed = False
        for name, w in faces.items():
            n = len(w)
            if n < 2:
                continue
            for i in range(n):
                if w[(i + 1) % n] == w[i].inv():
                    rot = w[i:] + w[:i]
                    faces[name] = rot[2:]
                    changed = True
                    break
            if changed:
                break
    return faces


def _corner_triples(refined: CellComplex):
    """Vertex triples of the refined faces, or None if not yet faithful."""
    data, sym_to_vertex = refined._vertex_data
    triangles = []
    for name, w in refined.faces:
        corners = tuple(f"v{sym_to_vertex[s]}" for s in w)
        if len(set(corners)) != 3:
            return None
        triangles.append(corners)
    if len({tuple(sorted(t)) for t in triangles}) != len(triangles):
        return None
    return triangles


def refine_to_triangulation(K: CellComplex):
    """Refine K to a triangulated cell complex and convert it.

    Returns (refined cell complex, simplicial complex).  The refined
    complex has triangle boundaries only; its vertex classes become the
    simplicial vertices.  Adjacent ``x x'`` pairs are cancelled first
    (an equivalence), since no amount of subdividing separates them.
    """
    report = K.invariant_report()
    faces = _cancel_inverse_pairs(dict(K.faces))
    counter = [_fresh_start(K)]
    # a null-boundary face is first cut into two one-gon lunes
    if len(faces) == 1 and not next(iter(faces.values())):
        name = next(iter(faces))
        faces = _split_face(faces, name, 0, f"_g{counter[0]}", f"{name}_l")
        counter[0] += 1
    faces = _bulk_split_all_edges(faces, counter)
    # one-gon faces become bigons whose stars are degenerate pillows;
    # splitting once more makes every boundary at least a square
    if any(len(w) < 3 for w in faces.values()):
        faces = _bulk_split_all_edges(faces, counter)
    faces = _bulk_star_faces(faces, counter)
    simp = None
    for _ in range(3):
        faces = _bulk_quadrisect(faces, counter)
        refined = build_complex(faces, internal=True)
        if refined.euler_characteristic() != report.euler:
            raise InternalInvariantViolation(
                "refinement changed the Euler characteristic"
            )
        triangles = _corner_triples(refined)
        if triangles is not None:
            simp = build_simplicial(triangles)
            break
    if simp is None:
        raise InternalInvariantViolation("refinement failed to become faithful")
    check = (
        validate_bordered_surface(simp)
        if report.num_contours
        else validate_closed_surface(simp)
    )
    if not check.ok:
        raise InternalInvariantViolation(
            "refinement output fails surface validation: "
            + "; ".join(check.violations[:3])
        )
    nv, ne, nt = simp.counts()
    if nv - ne + nt != report.euler:
        raise InternalInvariantViolation("simplicial chi differs from cell chi")
    return refined, simp


def to_cell_complex(K: SimplicialComplex2) -> CellComplex:
    """View a triangulated complex as a cell complex (for orientability).

    Each triangle becomes a face whose word walks its three directed
    sides; shared undirected edges get one name with signs by direction.
    """
    edge_name = {e: f"e{i}" for i, e in enumerate(K.edges)}

    def directed(a, b):
        if (a, b) in edge_name:
            return EdgeSym(edge_name[(a, b)], 1)
        return EdgeSym(edge_name[(b, a)], -1)

    faces = {}
    for i, (a, b, c) in enumerate(K.triangles):
        faces[f"T{i}"] = (directed(a, b), directed(b, c), directed(c, a))
    return build_complex(faces, internal=True)
