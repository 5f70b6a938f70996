"""Independent closed forms of leading series coefficients.

P6 keys are ``(component, exponent)`` in the local variable of the solution;
components are ``y``, ``zbar`` and ``z``.  ``tabulated`` keeps the tabulated
forms verbatim; ``corrected`` holds the symmetry-derived replacements for the
entries that are inconsistent, and ``reference`` merges the two.
"""


def p4_symmetric(theta0, theta_inf):
    """``y = 4 theta0 t sum a_k t^2k``, ``w = (theta0 + theta_inf) t sum b_k t^2k``."""
    th0, thi = theta0, theta_inf
    return {"a1": -2 / 3 * (2 * thi - 1),
            "a2": (4 * (2 * thi - 1) ** 2 + 3 * (4 * th0) ** 2 + 8 * (4 * th0) + 4) / 30,
            "b1": 2 / 3 * (thi - 3 * th0 - 1),
            "b2": 4 / 15 * ((2 * thi - 1) * (thi - 1) + th0 * (6 * th0 + 1))}


def p4_b2_tabulated(theta0, theta_inf):
    """The tabulated b2, which disagrees with the recursion (kept for comparison)."""
    return 4 / 15 * ((theta_inf - 3 * theta0 - 1) ** 2 + 4 * theta0 * (2 * theta_inf - 1))


def p5_first(theta0, theta1, theta_inf):
    """``a0, a1`` of y and ``b0, b1`` of w for the P5 solution (I)."""
    t0, t1, ti = theta0, theta1, theta_inf
    a0 = (t0 - t1 - ti) / (t0 - t1 + ti)
    b0 = (t0 - t1 + ti) * (t0 + t1 + ti) / (-4 * ti)
    s = t0 + 3 * t1 + ti
    core = 6 * a0 ** 2 * b0 - a0 * s - 8 * a0 * b0 + 2 * t1 + ti + 2 * b0
    delta = (1 + core) * (-1 + core) - 2 * a0 * (a0 - 1) ** 2 * b0 * (6 * a0 * b0 - 4 * b0 - s)
    a1 = a0 / delta * (4 * b0 * a0 ** 2 - a0 * s - 4 * a0 * b0 + 2 * t1 + ti - 1)
    b1 = b0 / delta * (1 - 4 * a0 * b0 + 2 * b0 + 2 * t1 + ti)
    return {"a0": a0, "a1": a1, "b0": b0, "b1": b1}


def tabulated(sid, a):
    a0, a1, a2, a3, a4 = a
    if sid == "P6_0_I":
        d = a4 - a0
        return {("y", 1): a4 / d,
                ("y", 2): a0 * a4 * (-1 - a1**2 + a3**2 + d**2) / (2 * (1 - d**2) * d**2),
                ("zbar", 0): (1 - a1**2 + a3**2 - d**2) / (4 * (1 - d**2)),
                ("z", -1): d}
    if sid == "P6_0_II":
        s = a4 + a0
        return {("y", 1): a4 / s,
                ("y", 2): -a0 * a4 * (1 + a1**2 - a3**2 - s**2) / (2 * (1 - s**2) * s**2),
                ("zbar", 0): (1 - a1**2 + a3**2 - s**2) / (4 * (1 - s**2)),
                ("z", 0): a2 * (a1 + a2) / (1 - a4 - a0)}
    if sid == "P6_0_III":
        s = a1 + a3
        return {("y", 0): s / a1,
                ("y", 1): -a3 * (1 + a4**2 - a0**2 - s**2) / (2 * a1 * (1 - s**2)),
                ("zbar", 0): -a1 / (2 * s),
                ("z", 0): -a1 * a2 / s}
    if sid == "P6_0_IV":
        s = a1 - a3
        return {("y", 0): s / a1,
                ("y", 1): a3 * (1 + a4**2 - a0**2 - s**2) / (2 * a1 * (1 - s**2)),
                ("zbar", 0): -a1 / (2 * s),
                ("z", 0): -a1 * (a1 + a2) / s}
    if sid == "P6_1_I":
        d = a0 - a3
        return {("y", 0): 1, ("y", 1): a3 / d,
                ("y", 2): a0 * a3 * (-1 - a1**2 + a4**2 + d**2) / (2 * (1 - d**2) * d**2),
                ("zbar", 0): (1 - a1**2 + a4**2 - d**2) / (4 * (1 - d**2)),
                ("z", -1): d}
    if sid == "P6_1_II":
        s = a0 + a3
        return {("y", 0): 1, ("y", 1): -a3 / s,
                ("y", 2): a0 * a3 * (1 + a1**2 - a4**2 - s**2) / (2 * (1 - s**2) * s**2),
                ("zbar", 0): (1 - a1**2 + a4**2 - s**2) / (4 * (1 - s**2)),
                ("z", 0): a2 * (a1 + a2) / (s - 1)}
    if sid == "P6_1_III":
        s = a4 + a1
        return {("y", 0): -a4 / a1,
                ("y", 1): a4 * (1 + a3**2 - a0**2 - s**2) / (2 * a1 * (1 - s**2)),
                ("zbar", 0): a1 / (2 * s),
                ("z", 0): a1 * a2 / s}
    if sid == "P6_1_IV":
        s = a4 - a1
        return {("y", 0): a4 / a1,
                ("y", 1): -a4 * (1 + a3**2 - a0**2 - s**2) / (2 * a1 * (1 - s**2)),
                ("zbar", 0): -a1 / (2 * s),
                ("z", 0): a1 * (a2 + a4) / (a1 - a4)}
    if sid == "P6_INF_I":
        s = a0 - a1
        return {("y", -1): (a1 - a0) / a1,
                ("y", 0): a1 * ((1 + a3**2 + a4**2 - a1**2 - s**2) * (a0 / a1) ** 2 + 1 + a0**2)
                / (2 * a0 * (1 - s**2)),
                ("zbar", 1): -a1 / (2 * (a1 - a0)),
                ("z", 1): -a1 * (a1 + a2) / (a1 - a0)}
    if sid == "P6_INF_II":
        s = a0 + a1
        return {("y", -1): (a1 + a0) / a1,
                ("y", 0): -a1 * ((1 + a3**2 + a4**2 - a1**2 - s**2) * (a0 / a1) ** 2 + 1 + a0**2)
                / (2 * a0 * (1 - s**2)),
                ("zbar", 1): -a1 / (2 * (a1 + a0)),
                ("z", 1): -a1 * a2 / (a1 + a0)}
    if sid == "P6_INF_III":
        s = a3 + a4
        return {("y", 0): a4 / s,
                ("y", 1): -a3 * a4 * (-1 + a0**2 - a1**2 + s**2) / (2 * (1 - s**2) * s**2),
                ("zbar", 1): (1 - a1**2 + a0**2 - s**2) / (4 * (1 - s**2)),
                ("z", 1): a2 * (a1 + a2) / (1 - a3 - a4)}
    if sid == "P6_INF_IV":
        s = a3 - a4
        return {("y", 0): a4 / (a4 - a3),
                ("y", 1): a3 * a4 * (-1 + a0**2 - a1**2 + s**2) / (2 * (1 - s**2) * s**2),
                ("zbar", 1): (1 - a1**2 + a0**2 - s**2) / (4 * (1 - s**2)),
                ("z", 0): a4 - a3}
    raise KeyError(sid)


# Entries whose tabulated form is inconsistent with the symmetry that relates
# them to a consistent entry; value is the symmetry-derived form.
def corrected(sid, a):
    a0, a1, a2, a3, a4 = a
    if sid == "P6_0_II":
        # s4 image of (0-I) y2
        s = a4 + a0
        return {("y", 2): a0 * a4 * (1 + a1**2 - a3**2 - s**2) / (2 * (1 - s**2) * s**2)}
    if sid in ("P6_1_I", "P6_1_II"):
        # t -> 1 - t flips the sign of y - 1 and of zbar
        base = tabulated(sid, a)
        return {k: -base[k] for k in (("y", 2), ("zbar", 0))}
    if sid == "P6_1_IV":
        return {("z", 0): a1 * (a1 + a2) / (a1 - a4)}
    if sid == "P6_INF_I":
        # t -> 1/t image of (0-I): constant term is -c2/c1^2
        d = a1 - a0
        return {("y", 0): a0 * (1 + a4**2 - a3**2 - d**2) / (2 * a1 * (1 - d**2))}
    if sid == "P6_INF_II":
        s = a1 + a0
        return {("y", 0): -a0 * (1 + a4**2 - a3**2 - s**2) / (2 * a1 * (1 - s**2))}
    return {}


def reference(sid, a):
    """Tabulated coefficients with the inconsistent entries replaced."""
    out = tabulated(sid, a)
    out.update(corrected(sid, a))
    return out
