"""Exact 2-D radial geometry kernel.

A centrally symmetric planar convex body whose boundary consists of
straight segments and centered conic arcs is described by its *radial
profile*: a partition of a full angular turn into pieces, each with a
closed-form radial function

    edge piece   r(th) = 1 / <a, u(th)>              boundary on <a,x> = 1
    quad piece   r(th) = 1 / sqrt(u(th)' M u(th))    boundary on x'Mx = 1

where u(th) = (cos th, sin th).  Any centered ellipse is a single quad
form, so intersection areas decompose into origin sectors (triangles for
edges, elliptic sectors for quads), and piece-vs-ellipse crossings reduce
to  alpha*cos 2th + beta*sin 2th + gamma = 0,  solved in closed form.

Areas, restriction arcs on a circle, and tangency sets computed here are
exact up to floating point; there is no quadrature anywhere.
"""

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
# pieces are kept at <= pi/2 so every mapped/elliptic sector stays well
# inside a half-turn and atan2-based angle differences are unambiguous
_SPAN_MAX = 0.5 * math.pi * (1.0 + 1e-12)
_ANGLE_EPS = 1e-12


def _u(th):
    return np.array([math.cos(th), math.sin(th)])


def _sqrtm2(M):
    """Symmetric PSD square root of a 2x2 matrix."""
    w, V = np.linalg.eigh(M)
    return (V * np.sqrt(np.maximum(w, 0.0))) @ V.T


@dataclass(frozen=True)
class Piece:
    kind: str  # "edge" | "quad"
    a: np.ndarray = None
    M: np.ndarray = None

    def radius(self, th):
        u = _u(th)
        if self.kind == "edge":
            d = float(self.a @ u)
            if d <= 0.0:
                raise ValueError("angle outside the validity span of an edge piece")
            return 1.0 / d
        return 1.0 / math.sqrt(float(u @ self.M @ u))

    def point(self, th):
        return self.radius(th) * _u(th)


class Profile:
    """Radial profile of a planar symmetric convex body.

    ``pieces[k]`` is valid on ``[bounds[k], bounds[k+1]]``; the bounds are
    strictly increasing, start in [0, 2pi), and close up exactly one turn.
    """

    def __init__(self, bounds, pieces):
        bounds = [float(b) for b in bounds]
        if len(bounds) != len(pieces) + 1:
            raise ValueError("need len(bounds) == len(pieces) + 1")
        if abs((bounds[-1] - bounds[0]) - TWO_PI) > 1e-9:
            raise ValueError("profile bounds must cover exactly one turn")
        sb, sp = [bounds[0]], []
        for k, piece in enumerate(pieces):
            lo, hi = bounds[k], bounds[k + 1]
            if hi - lo <= _ANGLE_EPS:
                raise ValueError("empty or reversed profile piece")
            parts = max(1, int(math.ceil((hi - lo) / (0.5 * math.pi) - 1e-12)))
            for j in range(1, parts):
                sb.append(lo + (hi - lo) * j / parts)
                sp.append(piece)
            sb.append(hi)
            sp.append(piece)
        sb[-1] = sb[0] + TWO_PI  # close the turn exactly
        self.bounds = np.array(sb)
        self.pieces = sp

    def piece_at(self, th):
        t = self.bounds[0] + (th - self.bounds[0]) % TWO_PI
        k = int(np.searchsorted(self.bounds, t, side="right") - 1)
        k = min(max(k, 0), len(self.pieces) - 1)
        return self.pieces[k]

    def radius_at(self, th):
        t = self.bounds[0] + (th - self.bounds[0]) % TWO_PI
        return self.piece_at(t).radius(t)


def polygon_profile(vertices):
    """Profile of a convex polygon given by hull-ordered ccw vertices.

    The origin must be interior; consecutive vertices define the edge
    pieces via the 2x2 solve <a, v_k> = <a, v_{k+1}> = 1.
    """
    V = np.asarray(vertices, dtype=float)
    m = V.shape[0]
    if m < 3:
        raise ValueError("polygon needs at least 3 vertices")
    ang = np.mod(np.arctan2(V[:, 1], V[:, 0]), TWO_PI)
    k0 = int(np.argmin(ang))
    V = np.roll(V, -k0, axis=0)
    ang = np.roll(ang, -k0)
    if np.any(np.diff(ang) <= _ANGLE_EPS):
        raise ValueError("vertices are not in strict ccw order around the origin")
    bounds = list(ang) + [ang[0] + TWO_PI]
    pieces = []
    for k in range(m):
        vk, vk1 = V[k], V[(k + 1) % m]
        if vk[0] * vk1[1] - vk[1] * vk1[0] <= 0.0:
            raise ValueError("polygon edge does not wind ccw around the origin")
        a = np.linalg.solve(np.vstack([vk, vk1]), np.ones(2))
        pieces.append(Piece("edge", a=a))
    return Profile(bounds, pieces)


def disc_profile(rho):
    M = np.eye(2) / (rho * rho)
    q = Piece("quad", M=M)
    return Profile([0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi, TWO_PI], [q] * 4)


def hull_ball_points_profile(rho, apex):
    """Profile of conv(rho*B union {+-q}): two tangent cones and two arcs."""
    q = np.asarray(apex, dtype=float)
    d = float(np.hypot(q[0], q[1]))
    if d <= rho:
        raise ValueError("apex must lie strictly outside the ball")
    psi = math.atan2(q[1], q[0])
    th_t = math.atan2(math.sqrt(d * d - rho * rho), rho)  # tangent-point offset
    p_plus = rho * _u(psi + th_t)
    p_minus = rho * _u(psi - th_t)
    arc = Piece("quad", M=np.eye(2) / (rho * rho))

    def edge(p0, p1):
        return Piece("edge", a=np.linalg.solve(np.vstack([p0, p1]), np.ones(2)))

    rel = [-th_t, 0.0, th_t, math.pi - th_t, math.pi, math.pi + th_t, TWO_PI - th_t]
    bounds = [psi + t for t in rel]
    pieces = [
        edge(p_minus, q),
        edge(q, p_plus),
        arc,
        edge(-p_minus, -q),
        edge(-q, -p_plus),
        arc,
    ]
    shift = bounds[0] % TWO_PI - bounds[0]
    return Profile([b + shift for b in bounds], pieces)


def transform_profile(profile, W):
    """Profile of the linear image W*K of the body with the given profile."""
    W = np.asarray(W, dtype=float)
    det = float(np.linalg.det(W))
    if abs(det) < 1e-14:
        raise ValueError("singular transform")
    Winv = np.linalg.inv(W)
    m = len(profile.pieces)
    nodes = [W @ profile.pieces[k].point(profile.bounds[k]) for k in range(m)]

    def map_piece(p):
        if p.kind == "edge":
            return Piece("edge", a=Winv.T @ p.a)
        return Piece("quad", M=Winv.T @ p.M @ Winv)

    pieces = [map_piece(p) for p in profile.pieces]
    if det < 0.0:  # orientation flips: retraverse ccw
        nodes = [nodes[0]] + nodes[:0:-1]
        pieces = pieces[::-1]
    ang = [math.atan2(p[1], p[0]) % TWO_PI for p in nodes]
    j0 = int(np.argmin(ang))
    ang = ang[j0:] + ang[:j0]
    pieces = pieces[j0:] + pieces[:j0]
    bounds = [ang[0]]
    for a in ang[1:]:
        while a <= bounds[-1]:
            a += TWO_PI
        bounds.append(a)
    bounds.append(ang[0] + TWO_PI)
    if bounds[-1] <= bounds[-2]:
        raise ValueError("transformed profile does not close up")
    return Profile(bounds, pieces)


def _quad_radius(M, th):
    u = _u(th)
    return 1.0 / math.sqrt(float(u @ M @ u))


def _quad_zero_angles(C, lo, hi):
    """Angles th in [lo, hi] where u(th)' C u(th) = 0, C symmetric 2x2.

    Rewrites the form as alpha*cos 2th + beta*sin 2th + gamma and inverts
    the phase-amplitude representation.  Returns [] when C has constant
    sign (including the degenerate C ~ 0 case, handled by the caller).
    """
    alpha = 0.5 * (C[0, 0] - C[1, 1])
    beta = C[0, 1]
    gamma = 0.5 * (C[0, 0] + C[1, 1])
    R = math.hypot(alpha, beta)
    scale = max(abs(C).max(), 1e-300)
    if R <= 1e-13 * scale:
        return []
    c = -gamma / R
    if abs(c) > 1.0 + 1e-12:
        return []
    delta = math.acos(min(1.0, max(-1.0, c)))
    phi = math.atan2(beta, alpha)
    roots = []
    for base in ((phi + delta) / 2.0, (phi - delta) / 2.0):
        k0 = int(math.floor((lo - base) / math.pi)) - 1
        k1 = int(math.ceil((hi - base) / math.pi)) + 1
        for k in range(k0, k1 + 1):
            th = base + k * math.pi
            if lo - _ANGLE_EPS <= th <= hi + _ANGLE_EPS:
                roots.append(min(max(th, lo), hi))
    roots.sort()
    out = []
    for th in roots:
        if not out or th - out[-1] > 1e-11:
            out.append(th)
    return out


def _crossings(piece, M_other, lo, hi):
    """Interior angles where the piece radius equals the quad-form radius."""
    if piece.kind == "edge":
        C = np.outer(piece.a, piece.a) - M_other
    else:
        C = piece.M - M_other
    return [t for t in _quad_zero_angles(C, lo, hi)
            if lo + 1e-12 < t < hi - 1e-12]


def _quad_sector(M, th0, th1):
    """Area of the origin sector of {x : x'Mx <= 1} between two rays.

    Mapping by M^{1/2} sends the region to the unit disc; the sector area
    is half the transformed angle over sqrt(det M).  Valid for spans < pi.
    """
    L = _sqrtm2(M)
    y0, y1 = L @ _u(th0), L @ _u(th1)
    dphi = math.atan2(y0[0] * y1[1] - y0[1] * y1[0], float(y0 @ y1))
    if dphi < 0.0:
        dphi += TWO_PI
    return 0.5 * dphi / math.sqrt(float(np.linalg.det(M)))


def _sector(piece, th0, th1):
    if piece.kind == "edge":
        p, q = piece.point(th0), piece.point(th1)
        return 0.5 * (p[0] * q[1] - p[1] * q[0])
    return _quad_sector(piece.M, th0, th1)


def area(profile):
    """Exact area enclosed by the profile."""
    total = 0.0
    for k, piece in enumerate(profile.pieces):
        total += _sector(piece, profile.bounds[k], profile.bounds[k + 1])
    return total


def intersect_area(profile, M_ell):
    """Exact area of the body intersected with {x : x' M_ell x <= 1}.

    Radial decomposition: on each sub-interval between crossings the
    smaller radial function wins, and its sector has a closed form.
    """
    M_ell = np.asarray(M_ell, dtype=float)
    total = 0.0
    for k, piece in enumerate(profile.pieces):
        lo, hi = profile.bounds[k], profile.bounds[k + 1]
        cuts = [lo] + _crossings(piece, M_ell, lo, hi) + [hi]
        for t0, t1 in zip(cuts[:-1], cuts[1:]):
            if t1 - t0 < 1e-14:
                continue
            tm = 0.5 * (t0 + t1)
            if piece.radius(tm) <= _quad_radius(M_ell, tm):
                total += _sector(piece, t0, t1)
            else:
                total += _quad_sector(M_ell, t0, t1)
    return total


def _normalize_arcs(segs, base):
    """Merge touching segments collected over [base, base+2pi] into arcs.

    Returned arcs are (alpha, beta) with alpha in [0, 2pi) and
    beta - alpha <= 2pi; at most one arc extends past 2pi (wrap-around).
    A full turn comes back as [(0, 2pi)].
    """
    if not segs:
        return []
    segs = sorted(segs)
    merged = [list(segs[0])]
    for a, b in segs[1:]:
        if a - merged[-1][1] <= 1e-11:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    if (len(merged) > 1 and merged[0][0] - base <= 1e-11
            and (base + TWO_PI) - merged[-1][1] <= 1e-11):
        first = merged.pop(0)
        merged[-1][1] = first[1] + TWO_PI
    out = []
    for a, b in merged:
        if b - a >= TWO_PI - 1e-11:
            return [(0.0, TWO_PI)]
        a0 = a % TWO_PI
        out.append((a0, a0 + (b - a)))
    out.sort()
    return out


def inside_arcs(profile, r):
    """Arcs of the circle of radius r lying inside the (closed) body.

    Returns ``(arcs, contact_arcs)``; contact arcs are the positive-measure
    angular spans where the body boundary coincides with the circle itself
    (a quad piece equal to the r-circle), the degenerate configuration in
    which the circle neither enters nor leaves the body.
    """
    Mr = np.eye(2) / (r * r)
    segs, contact = [], []
    for k, piece in enumerate(profile.pieces):
        lo, hi = profile.bounds[k], profile.bounds[k + 1]
        if piece.kind == "quad" and np.abs(piece.M - Mr).max() <= 1e-10 / (r * r):
            segs.append((lo, hi))
            contact.append((lo, hi))
            continue
        cuts = [lo] + _crossings(piece, Mr, lo, hi) + [hi]
        for t0, t1 in zip(cuts[:-1], cuts[1:]):
            if t1 - t0 < 1e-14:
                continue
            if piece.radius(0.5 * (t0 + t1)) >= r * (1.0 - 1e-13):
                segs.append((t0, t1))
    base = profile.bounds[0]
    return _normalize_arcs(segs, base), _normalize_arcs(contact, base)


def contact_set(profile, r):
    """The set where the body boundary meets the r-circle.

    Returns ``(points, arcs)``: isolated angles with body radius equal to r
    (tangencies and transversal crossings) and positive-measure contact arcs.
    """
    Mr = np.eye(2) / (r * r)
    points = []
    _, arcs = inside_arcs(profile, r)
    for k, piece in enumerate(profile.pieces):
        lo, hi = profile.bounds[k], profile.bounds[k + 1]
        if piece.kind == "quad" and np.abs(piece.M - Mr).max() <= 1e-10 / (r * r):
            continue  # whole-arc contact, already reported
        if piece.kind == "edge":
            C = np.outer(piece.a, piece.a) - Mr
        else:
            C = piece.M - Mr
        for th in _quad_zero_angles(C, lo, hi):
            points.append(th % TWO_PI)
    points.sort()
    out = []
    for th in points:
        if not out or th - out[-1] > 1e-9:
            out.append(th)
    if len(out) > 1 and (out[0] + TWO_PI) - out[-1] <= 1e-9:
        out.pop()
    return out, arcs
