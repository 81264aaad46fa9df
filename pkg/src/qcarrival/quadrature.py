"""Adaptive Simpson quadrature with a Richardson-style error estimate.

The integrand is sampled on nested interval halvings; the difference between
the one-panel and two-panel Simpson rules gives the local error estimate and
the Richardson-extrapolated update.  Refinement depth is capped so that a
non-converging integral (e.g. an under-resolved oscillatory one) raises
QuadratureError instead of returning a silently inaccurate number.

The error budget is split across the initial panels in proportion to each
panel's share of the coarse integral magnitude (with a floor proportional to
its length).  A panel carrying most of a sharply peaked integral therefore
gets most of the budget; length-proportional allocation alone would demand
absolute accuracies below the integrand's own rounding noise on exactly those
panels and refine forever.

Works for real- or complex-valued integrands of a real variable.
"""

from __future__ import annotations

from .errors import QuadratureError


def integrate_adaptive(
    f,
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-30,
    breakpoints=(),
    initial_segments: int = 1,
    max_depth: int = 20,
):
    """Integrate f over [a, b] to roughly max(abs_tol, rel_tol*|result|).

    breakpoints: interior abscissae that must be initial panel boundaries
      (use them to pin known narrow features so the first coarse pass cannot
      step over them).
    initial_segments: uniform pre-subdivision of every panel, useful for
      oscillatory integrands where a single coarse Simpson panel could
      spuriously agree with its refinement.

    The relative tolerance is taken against the final integral value: if the
    adaptive pass reveals large cancellation (|result| well below the first
    coarse estimate), the pass is rerun with a tightened budget.
    """
    if not b > a:
        if b == a:
            return 0.0
        raise ValueError(f"integration bounds must satisfy a < b, got [{a}, {b}]")

    nodes = _build_nodes(a, b, breakpoints, initial_segments)

    rough = 0.0
    mag = 0.0
    panels = []
    for lo, hi in zip(nodes[:-1], nodes[1:]):
        flo, fhi, fmid = f(lo), f(hi), f(0.5 * (lo + hi))
        s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
        panels.append((lo, flo, hi, fhi, 0.5 * (lo + hi), fmid, s))
        rough = rough + s
        mag += abs(s)

    span = b - a
    target = max(abs_tol, rel_tol * abs(rough))
    for _ in range(4):
        total = 0.0
        for lo, flo, hi, fhi, mid, fmid, s in panels:
            weight = max(abs(s) / mag if mag > 0.0 else 0.0, (hi - lo) / span)
            total = total + _refine(f, lo, flo, hi, fhi, mid, fmid, s, target * weight, max_depth)
        needed = max(abs_tol, rel_tol * abs(total))
        if target <= 1.0001 * needed:
            return total
        target = needed  # cancellation revealed a smaller result; tighten
    raise QuadratureError(
        f"relative tolerance {rel_tol:g} unattainable on [{a:g}, {b:g}]: "
        f"result magnitude kept shrinking under refinement (last {abs(total):g})"
    )


def _build_nodes(a, b, breakpoints, initial_segments):
    cuts = sorted({float(x) for x in breakpoints if a < x < b})
    coarse = [a] + cuts + [b]
    if initial_segments <= 1:
        return coarse
    nodes = []
    for lo, hi in zip(coarse[:-1], coarse[1:]):
        step = (hi - lo) / initial_segments
        nodes.extend(lo + i * step for i in range(initial_segments))
    nodes.append(b)
    return nodes


def _refine(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    # interval exhausted in floating point: accept the current estimate
    if lm <= a or rm <= m or m <= lm or b <= rm:
        return whole
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol or abs(delta) <= 64.0 * 2.220446049250313e-16 * (abs(left) + abs(right)):
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive refinement budget exhausted on [{a:g}, {b:g}] "
            f"(local error estimate {abs(delta) / 15.0:g} > {tol:g})"
        )
    return _refine(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) + _refine(
        f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1
    )
