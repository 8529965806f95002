"""Shared constructors for patches sitting on each degeneracy stratum."""
import numpy as np

from minkfeat import MongePatch


def random_timelike(rng, degree=4, scale=0.5):
    tri = [(s, i, rng.normal() * scale) for s in range(2, degree + 1) for i in range(s + 1)]
    return MongePatch.timelike(degree, tri)


def random_lightcone(rng, degree=4, scale=0.5):
    tri = [(s, i, rng.normal() * scale) for s in range(2, degree + 1) for i in range(s + 1)]
    return MongePatch.lightcone(degree, tri)


def lpl_mcnc_point_patch(rng, degenerate=False, degree=4):
    """Timelike patch whose origin lies on the coincidence locus and the
    mean-curvature curve: a22 = a20, a21 = +-2 a20.  With degenerate=True
    the third-order terms are tuned so the two curves are tangent there
    (the transversality invariant vanishes)."""
    a20 = rng.uniform(0.3, 1.0) * rng.choice([-1.0, 1.0])
    a21 = 2.0 * rng.choice([-1.0, 1.0]) * a20
    a22 = a20
    a30, a31, a32 = rng.normal(size=3) * 0.8
    if degenerate:
        denom = 3 * a21 * a31 - 18 * a20 * a30
        if abs(denom) < 0.1:
            a30 += np.sign(denom if denom else 1.0) * 0.5
            denom = 3 * a21 * a31 - 18 * a20 * a30
        a33 = (a21 * a31**2 + a21 * a32**2 - 2 * a20 * a31 * a32
               - 3 * a21 * a30 * a32) / denom
    else:
        a33 = rng.normal() * 0.8
    tri = [(2, 0, a20), (2, 1, a21), (2, 2, a22),
           (3, 0, a30), (3, 1, a31), (3, 2, a32), (3, 3, a33)]
    if degree >= 4:
        tri += [(4, i, rng.normal() * 0.5) for i in range(5)]
    return MongePatch.timelike(degree, tri)


def ld_lpl_patch(rng, tuned=False, degree=4, a21=1.0):
    """Lightcone patch with the origin on the coincidence locus
    (a20 = 0, a21 != 0); tuned=True imposes the higher-order tangency
    a30 = -a21^2/3 of the degenerate contact scenario."""
    a30 = -a21**2 / 3.0 if tuned else rng.normal() * 0.7
    if not tuned and abs(3 * a30 + a21**2) < 0.1:
        a30 += 0.3
    tri = [(2, 1, a21), (2, 2, rng.normal() * 0.7), (3, 0, a30)]
    tri += [(3, i, rng.normal() * 0.7) for i in (1, 2, 3)]
    if degree >= 4:
        tri += [(4, i, rng.normal() * 0.5) for i in range(5)]
    return MongePatch.lightcone(degree, tri)


def lightlike_umbilic_patch(rng, degree=4, quartics=True):
    """Lightcone patch with a lightlike umbilic at the origin
    (a20 = a21 = 0); a22, a30 and the Morse invariant of the degeneracy
    field bounded away from zero (scenario nondegeneracy)."""
    while True:
        a22 = rng.uniform(0.3, 1.0) * rng.choice([-1.0, 1.0])
        a30 = rng.uniform(0.3, 1.0) * rng.choice([-1.0, 1.0])
        a31, a32, a33 = rng.normal(size=3) * 0.6
        if abs(6 * a22**2 * a30 + 3 * a30 * a32 - a31**2) >= 0.1:
            break
    tri = [(2, 2, a22), (3, 0, a30), (3, 1, a31), (3, 2, a32), (3, 3, a33)]
    if degree >= 4 and quartics:
        tri += [(4, i, rng.normal() * 0.5) for i in range(5)]
    return MongePatch.lightcone(degree, tri)


def flat_umbilic_patch(rng, degree=3):
    """Timelike patch with vanishing 2-jet (flat timelike umbilic)."""
    tri = [(3, i, rng.normal()) for i in range(4)]
    if degree >= 4:
        tri += [(4, i, rng.normal() * 0.5) for i in range(5)]
    return MongePatch.timelike(degree, tri)


def non_morse_umbilic_patch(rng, degree=4):
    """Timelike umbilic (a22 = -a20, a21 = 0) with the Morse invariant of
    the discriminant field tuned to zero through a33."""
    a20 = rng.uniform(0.3, 0.8) * rng.choice([-1.0, 1.0])
    a30, a31, a32 = rng.normal(size=3) * 0.7
    if abs(a31) < 0.2:
        a31 += np.sign(a31 if a31 else 1.0) * 0.4
    a33 = (3 * a30 * a32 + a32**2 - a31**2) / (3 * a31)
    tri = [(2, 0, a20), (2, 2, -a20), (3, 0, a30), (3, 1, a31), (3, 2, a32), (3, 3, a33)]
    if degree >= 4:
        tri += [(4, i, rng.normal() * 0.4) for i in range(5)]
    return MongePatch.timelike(degree, tri)


def mcnc_singular_patch(rng, degree=4):
    """Timelike patch with a singular mean-curvature curve at the origin:
    a22 = a20, a32 = 3 a30, a31 = 3 a33 (and not umbilic)."""
    a20 = rng.uniform(0.3, 0.8) * rng.choice([-1.0, 1.0])
    a21 = rng.normal()
    if abs(a21 - 2 * a20) < 0.1 and abs(a21 + 2 * a20) < 0.1:
        a21 += 0.5
    a30, a33 = rng.normal(size=2) * 0.6
    tri = [(2, 0, a20), (2, 1, a21), (2, 2, a20),
           (3, 0, a30), (3, 1, 3 * a33), (3, 2, 3 * a30), (3, 3, a33)]
    tri += [(4, i, rng.normal() * 0.5) for i in range(5)]
    return MongePatch.timelike(degree, tri)
