"""Pure-Python kernels: certified distance queries and the quadtree area engine.

This module is the reference twin of the compiled extension ``dustlab._core``.
Both implement the same algorithms with identical IEEE float64 semantics
(the extension is compiled with FP contraction off), so results are expected
to match bit for bit; a test asserts that.

Floating-point policy
---------------------
Construction-square coordinates are generated by the contractive recursion
p_child = p + offset(level) and stay within an absolute error E_PAD of the
true dyadic-in-r positions (error analysis: per-level rounding is at most a
few ulps of values <= 2 and contracts geometrically, totalling < 1e-14;
E_PAD = 6e-14 dominates it). Distance bounds are computed with nearest
rounding and then pushed outward by explicit ``nextafter`` steps plus the
absolute pad BND_PAD = 1e-13 which dominates both E_PAD and the few-ulp
evaluation error. Lower bounds never exceed the true distance; upper bounds
are distances to corner points, which lie in the attractor.

Branch-and-bound frontier order: entries are compared by
(lower bound, word fraction, level, x, y), where the word fraction is the
base-4 expansion of the word's letters; this realizes the documented
"lower bound, then lexicographic word" order (exactly, up to word length 26;
beyond that ties fall through to level and position, still deterministic).
"""

from __future__ import annotations

import math
from heapq import heappush, heappop

INF = math.inf

E_PAD = 6e-14      # absolute coordinate error pad for construction squares
BND_PAD = 2e-13    # absolute outward pad applied to distance bounds
TOL_FLOOR = 1e-12  # smallest certified width the square tree can resolve
TABLE_MAX = 64     # deepest construction level ever expanded

REGION_PLANE = 0
REGION_UNIT = 1
REGION_CROSS = 2
REGION_ARMS = 3

STATUS_OUT = -1
STATUS_UNC = 0
STATUS_IN = 1
STATUS_DIST = 2
STATUS_CAP = -2


def _dn(x):
    return math.nextafter(x, -INF)


def _up(x):
    return math.nextafter(x, INF)


def _tables(r):
    """Per-level side lengths (nearest/down/up), child offsets, word-fraction steps."""
    side = [1.0] * TABLE_MAX
    side_lo = [1.0] * TABLE_MAX
    side_hi = [1.0] * TABLE_MAX
    off = [0.0] * TABLE_MAX
    frac = [1.0] * TABLE_MAX
    c = r - 1.0
    for l in range(1, TABLE_MAX):
        side[l] = side[l - 1] / r
        side_lo[l] = _dn(side_lo[l - 1] / r)
        side_hi[l] = _up(side_hi[l - 1] / r)
        off[l] = c * side[l]
        frac[l] = frac[l - 1] * 0.25
    return side, side_lo, side_hi, off, frac


def _point_box_lb(px, py, sx, sy, sh):
    """Certified lower bound for the distance from (px,py) to the square."""
    dx = 0.0
    t = sx + sh
    if px < sx:
        dx = _dn(sx - px)
    elif px > t:
        dx = _dn(px - _up(t))
    dy = 0.0
    t = sy + sh
    if py < sy:
        dy = _dn(sy - py)
    elif py > t:
        dy = _dn(py - _up(t))
    if dx < 0.0:
        dx = 0.0
    if dy < 0.0:
        dy = 0.0
    d2 = _dn(_dn(dx * dx) + _dn(dy * dy))
    if d2 <= 0.0:
        return 0.0
    d = _dn(_dn(math.sqrt(d2)) - BND_PAD)
    return d if d > 0.0 else 0.0


def _point_corner_ub(px, py, sx, sy, sh):
    """Certified upper bound via the square's nearest corner (corner in attractor)."""
    ax = px - sx
    bx = ax - sh
    ay = py - sy
    by = ay - sh
    mx = ax * ax
    t = bx * bx
    if t < mx:
        mx = t
    my = ay * ay
    t = by * by
    if t < my:
        my = t
    return _up(_up(math.sqrt(_up(_up(mx) + _up(my)))) + BND_PAD)


def bnb_query(r, px, py, tol, eps, margin, node_cap):
    """Best-first branch and bound over the construction-square tree.

    eps < 0: distance mode; stops when upper - lower <= tol,
             returns (STATUS_DIST, lower, upper, nodes_expanded).
    eps >= 0: three-way classification against the threshold band
             [eps - margin, eps + margin]; checks, in fixed order,
             inside (upper + margin <= eps), outside (lower - margin > eps),
             then width <= tol (uncertain).
    Exceeding node_cap or the level table yields STATUS_CAP.
    """
    side, side_lo, side_hi, off, frac_step = _tables(r)
    lb0 = _point_box_lb(px, py, 0.0, 0.0, side_hi[0])
    best = _point_corner_ub(px, py, 0.0, 0.0, side_hi[0])
    heap = [(lb0, 0.0, 0, 0.0, 0.0)]
    nodes = 0
    while heap:
        lb, frac, level, sx, sy = heappop(heap)
        if lb > best:
            continue
        if eps >= 0.0:
            if _up(best + margin) <= eps:
                return (STATUS_IN, lb, best, nodes)
            if _dn(lb - margin) > eps:
                return (STATUS_OUT, lb, best, nodes)
        if best - lb <= tol:
            return (STATUS_UNC if eps >= 0.0 else STATUS_DIST, lb, best, nodes)
        if nodes >= node_cap or level + 1 >= TABLE_MAX:
            return (STATUS_CAP, lb, best, nodes)
        nodes += 1
        l1 = level + 1
        o = off[l1]
        sh = side_hi[l1]
        fs = frac_step[l1]
        for i in range(4):
            # child order = map order: (0,0), (t,0), (t,t), (0,t)
            nx = sx + o if i in (1, 2) else sx
            ny = sy + o if i in (2, 3) else sy
            cub = _point_corner_ub(px, py, nx, ny, sh)
            if cub < best:
                best = cub
            clb = _point_box_lb(px, py, nx, ny, sh)
            if clb <= best:
                heappush(heap, (clb, frac + i * fs, l1, nx, ny))
    # heap exhausted: every remaining square was pruned against best, so the
    # minimum is attained at the witness corner itself
    return (STATUS_UNC if eps >= 0.0 else STATUS_DIST, best, best, nodes)


def distance_query(r, px, py, tol, node_cap):
    return bnb_query(r, px, py, tol, -1.0, 0.0, node_cap)


def classify_box(r, x0, x1, y0, y1, eps, slack, node_cap):
    """Classify an axis-aligned cell against the eps-parallel set.

    Uses the certified distance enclosure at the cell center plus the
    1-Lipschitz property of the distance function across the cell.
    """
    cx = 0.5 * (x0 + x1)
    cy = 0.5 * (y0 + y1)
    hx = x1 - cx
    t = cx - x0
    if t > hx:
        hx = t
    hy = y1 - cy
    t = cy - y0
    if t > hy:
        hy = t
    hd = _up(math.sqrt(_up(_up(hx * hx) + _up(hy * hy))))
    tol = hd * slack
    if tol < TOL_FLOOR:
        tol = TOL_FLOOR
    return bnb_query(r, cx, cy, tol, eps, hd, node_cap)


def threshold_query(r, px, py, eps, node_cap):
    """Is the point within eps of the attractor? (STATUS_IN / _OUT / _UNC)."""
    tol = eps * 1e-9
    if tol < TOL_FLOOR:
        tol = TOL_FLOOR
    return bnb_query(r, px, py, tol, eps, 0.0, node_cap)


# -- region clipping ---------------------------------------------------------

def _region_boxes(region, r):
    """Directed rectangles bounding the region's subtracted squares.

    Region boundaries sit at 1/r and 1 - 1/r; enlarged boxes (index 0) bound
    them from outside, shrunk boxes (index 1) from inside, so clipped areas
    can be rounded in either direction.
    """
    if region in (REGION_PLANE, REGION_UNIT):
        return None
    iv_lo = _dn(1.0 / r)
    iv_hi = _up(1.0 / r)
    om_lo = _dn(1.0 - iv_hi)
    om_hi = _up(1.0 - iv_lo)
    corners_big = ((0.0, iv_hi, 0.0, iv_hi), (om_lo, 1.0, 0.0, iv_hi),
                   (om_lo, 1.0, om_lo, 1.0), (0.0, iv_hi, om_lo, 1.0))
    corners_small = ((0.0, iv_lo, 0.0, iv_lo), (om_hi, 1.0, 0.0, iv_lo),
                     (om_hi, 1.0, om_hi, 1.0), (0.0, iv_lo, om_hi, 1.0))
    center_big = (iv_lo, om_hi, iv_lo, om_hi)
    center_small = (iv_hi, om_lo, iv_hi, om_lo)
    return (corners_big, corners_small, center_big, center_small)


def _overlap_dn(ax0, ax1, ay0, ay1, b):
    w = _dn((ax1 if ax1 < b[1] else b[1]) - (ax0 if ax0 > b[0] else b[0]))
    if w <= 0.0:
        return 0.0
    h = _dn((ay1 if ay1 < b[3] else b[3]) - (ay0 if ay0 > b[2] else b[2]))
    if h <= 0.0:
        return 0.0
    return _dn(w * h)


def _overlap_up(ax0, ax1, ay0, ay1, b):
    w = _up((ax1 if ax1 < b[1] else b[1]) - (ax0 if ax0 > b[0] else b[0]))
    if w <= 0.0:
        return 0.0
    h = _up((ay1 if ay1 < b[3] else b[3]) - (ay0 if ay0 > b[2] else b[2]))
    if h <= 0.0:
        return 0.0
    return _up(w * h)


_UNIT_BOX = (0.0, 1.0, 0.0, 1.0)


def clip_area(region, boxes, x0, x1, y0, y1):
    """(lower, upper) bounds for the area of cell intersect region."""
    if region == REGION_PLANE:
        lo = _dn(_dn(x1 - x0) * _dn(y1 - y0))
        hi = _up(_up(x1 - x0) * _up(y1 - y0))
        return (lo if lo > 0.0 else 0.0, hi if hi > 0.0 else 0.0)
    u_lo = _overlap_dn(x0, x1, y0, y1, _UNIT_BOX)
    u_hi = _overlap_up(x0, x1, y0, y1, _UNIT_BOX)
    if region == REGION_UNIT:
        return (u_lo, u_hi)
    corners_big, corners_small, center_big, center_small = boxes
    sub_hi = 0.0
    sub_lo = 0.0
    for b in corners_big:
        sub_hi = _up(sub_hi + _overlap_up(x0, x1, y0, y1, b))
    for b in corners_small:
        sub_lo = _dn(sub_lo + _overlap_dn(x0, x1, y0, y1, b))
    if region == REGION_ARMS:
        sub_hi = _up(sub_hi + _overlap_up(x0, x1, y0, y1, center_big))
        sub_lo = _dn(sub_lo + _overlap_dn(x0, x1, y0, y1, center_small))
    lo = _dn(u_lo - sub_hi)
    hi = _up(u_hi - sub_lo)
    if lo < 0.0:
        lo = 0.0
    if hi < 0.0:
        hi = 0.0
    if hi > u_hi:
        hi = u_hi
    return (lo, hi)


# -- quadtree area engine ----------------------------------------------------

def _build_list(parent, x0, x1, y0, y1, tol, r2_keep, side_hi, off):
    """Refine/filter a candidate construction-square list for one cell.

    Keeps every square whose box could lie within the keep radius of the cell
    and expands squares until their side drops to the classification
    tolerance. Dropped squares are certified to lie beyond the keep radius.
    """
    out = []
    stack = parent[::-1]
    while stack:
        sx, sy, lvl = stack.pop()
        sh = side_hi[lvl]
        t = sx + sh
        dx = 0.0
        if sx > x1:
            dx = sx - x1
        elif t < x0:
            dx = x0 - t
        t = sy + sh
        dy = 0.0
        if sy > y1:
            dy = sy - y1
        elif t < y0:
            dy = y0 - t
        if _dn(_dn(dx * dx) + _dn(dy * dy)) > r2_keep:
            continue
        if sh > tol and lvl + 1 < TABLE_MAX:
            l1 = lvl + 1
            o = off[l1]
            # reverse child order: the stack pops them back in word order
            stack.append((sx, sy + o, l1))
            stack.append((sx + o, sy + o, l1))
            stack.append((sx + o, sy, l1))
            stack.append((sx, sy, l1))
        else:
            out.append((sx, sy, lvl))
    return out


def _classify_from_list(lst, cx, cy, hd, eps, r_keep, side_hi):
    """Cell verdict from a refined candidate list (no heap needed: every
    listed square is already at the classification resolution)."""
    lb2 = INF
    ub2 = INF
    for (sx, sy, lvl) in lst:
        sh = side_hi[lvl]
        ax = cx - sx
        bx = ax - sh
        ay = cy - sy
        by = ay - sh
        dx = -ax if ax < 0.0 else (bx if bx > 0.0 else 0.0)
        dy = -ay if ay < 0.0 else (by if by > 0.0 else 0.0)
        d2 = dx * dx + dy * dy
        if d2 < lb2:
            lb2 = d2
        mx = ax * ax
        t = bx * bx
        if t < mx:
            mx = t
        my = ay * ay
        t = by * by
        if t < my:
            my = t
        c2 = mx + my
        if c2 < ub2:
            ub2 = c2
    if lb2 < INF:
        lb = _dn(_dn(math.sqrt(lb2)) - BND_PAD)
        if lb < 0.0:
            lb = 0.0
        if lb > r_keep:
            lb = r_keep
        ub = _up(_up(math.sqrt(ub2)) + BND_PAD)
    else:
        lb = r_keep
        ub = INF
    if ub < INF and _up(ub + hd) <= eps:
        return STATUS_IN
    if _dn(lb - hd) > eps:
        return STATUS_OUT
    return STATUS_UNC


def _engine_pass(r, eps, region, boxes, refine_depth, max_cells, slack,
                 side_hi, off, x0r, x1r, y0r, y1r):
    """One full deterministic DFS at a fixed refinement depth.

    Traversal and accumulation follow Morton order (children visited
    SW, SE, NW, NE); sums use Kahan compensation and a final outward pad.
    """
    acc_lo = 0.0
    comp_lo = 0.0
    acc_hi = 0.0
    comp_hi = 0.0
    acc_abs = 0.0
    n_in = 0
    n_out = 0
    n_unc = 0
    cells = 0
    depth_reached = 0
    capped = False
    root_list = [(0.0, 0.0, 0)]
    stack = [(x0r, x1r, y0r, y1r, 0, root_list)]
    while stack:
        x0, x1, y0, y1, depth, plist = stack.pop()
        cells += 1
        if depth > depth_reached:
            depth_reached = depth
        clo, chi = clip_area(region, boxes, x0, x1, y0, y1)
        if chi <= 0.0:
            n_out += 1
            continue
        cx = 0.5 * (x0 + x1)
        cy = 0.5 * (y0 + y1)
        hx = x1 - cx
        t = cx - x0
        if t > hx:
            hx = t
        hy = y1 - cy
        t = cy - y0
        if t > hy:
            hy = t
        hd = _up(math.sqrt(_up(_up(hx * hx) + _up(hy * hy))))
        tol = hd * slack
        if tol < TOL_FLOOR:
            tol = TOL_FLOOR
        r_keep = _up(_up(eps + _up(hd * (1.0 + slack))) + (4.0 * E_PAD + TOL_FLOOR))
        t = _up(r_keep + 2.0 * E_PAD)
        r2_keep = _up(t * t)
        lst = _build_list(plist, x0, x1, y0, y1, tol, r2_keep, side_hi, off)
        verdict = _classify_from_list(lst, cx, cy, hd, eps, r_keep, side_hi)
        if verdict == STATUS_IN:
            y = clo - comp_lo
            t2 = acc_lo + y
            comp_lo = (t2 - acc_lo) - y
            acc_lo = t2
            y = chi - comp_hi
            t2 = acc_hi + y
            comp_hi = (t2 - acc_hi) - y
            acc_hi = t2
            acc_abs += chi
            n_in += 1
        elif verdict == STATUS_OUT:
            n_out += 1
        else:
            if depth < refine_depth and cells < max_cells:
                xm = 0.5 * (x0 + x1)
                ym = 0.5 * (y0 + y1)
                stack.append((xm, x1, ym, y1, depth + 1, lst))
                stack.append((x0, xm, ym, y1, depth + 1, lst))
                stack.append((xm, x1, y0, ym, depth + 1, lst))
                stack.append((x0, xm, y0, ym, depth + 1, lst))
            else:
                if depth < refine_depth:
                    capped = True
                y = chi - comp_hi
                t2 = acc_hi + y
                comp_hi = (t2 - acc_hi) - y
                acc_hi = t2
                acc_abs += chi
                n_unc += 1
    pad = math.ldexp(acc_abs, -50)
    lo = _dn(acc_lo - pad)
    if lo < 0.0:
        lo = 0.0
    hi = _up(acc_hi + pad)
    if hi < lo:
        hi = lo
    return (lo, hi, n_in, n_out, n_unc, depth_reached, cells, capped)


def volume_region(r, eps, region, budget, max_depth, cell_cap, slack):
    """Certified area of (eps-parallel set of the dust) intersected with a region.

    Runs deterministic DFS passes at increasing refinement depth until the
    enclosure width drops under the budget, the depth cap is reached, or the
    cell cap trips. Returns
    (lo, hi, n_in, n_out, n_unc, depth_reached, cells, budget_met).
    """
    side, side_lo, side_hi, off, frac = _tables(r)
    boxes = _region_boxes(region, r)
    if region == REGION_PLANE:
        x0r, x1r, y0r, y1r = -eps, 1.0 + eps, -eps, 1.0 + eps
    else:
        x0r, x1r, y0r, y1r = 0.0, 1.0, 0.0, 1.0
    depth = 0
    while True:
        res = _engine_pass(r, eps, region, boxes, depth, cell_cap, slack,
                           side_hi, off, x0r, x1r, y0r, y1r)
        lo, hi, n_in, n_out, n_unc, depth_reached, cells, capped = res
        width = _up(hi - lo)
        if width <= budget:
            return (lo, hi, n_in, n_out, n_unc, depth_reached, cells, True)
        if depth >= max_depth or capped:
            return (lo, hi, n_in, n_out, n_unc, depth_reached, cells, False)
        if cells < 200_000:
            step = 3
        elif cells < 2_000_000:
            step = 2
        else:
            step = 1
        depth += step
        if depth > max_depth:
            depth = max_depth
