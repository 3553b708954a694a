"""Slow, loop-based reference implementations.

Nothing here imports the package under test: each function re-derives its
quantity straight from the defining formula (clamped-index borders, direct
DFT sums, per-pixel loops, exact fractions) so it can act as an independent
check on the vectorized code.
"""

import bisect
import colorsys
import math
from collections import Counter, deque
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------- filters

def clamp(v, lo, hi):
    return lo if v < lo else hi if v > hi else v


def correlate_loops(plane, kernel):
    h, w = plane.shape
    kh, kw = kernel.shape
    out = np.zeros((h, w))
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for i in range(kh):
                for j in range(kw):
                    acc += kernel[i, j] * plane[clamp(y + i - kh // 2, 0, h - 1), clamp(x + j - kw // 2, 0, w - 1)]
            out[y, x] = acc
    return out


def gaussian_kernel_loops(sigma, ksize):
    half = ksize // 2
    k = np.zeros((ksize, ksize))
    for i in range(ksize):
        for j in range(ksize):
            k[i, j] = math.exp(-((i - half) ** 2 + (j - half) ** 2) / (2 * sigma * sigma))
    return k / k.sum()


SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=float)
SOBEL_Y = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=float)
LAPLACIAN = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=float)


def luma_loops(rgb):
    h, w, _ = rgb.shape
    out = np.zeros((h, w))
    for y in range(h):
        for x in range(w):
            r, g, b = rgb[y, x]
            out[y, x] = 0.299 * r + 0.587 * g + 0.114 * b
    return out


def naive_dft(x):
    """Direct double sum, no FFT."""
    h, w = x.shape
    wy = np.exp(-2j * np.pi * np.outer(np.arange(h), np.arange(h)) / h)
    wx = np.exp(-2j * np.pi * np.outer(np.arange(w), np.arange(w)) / w)
    return wy @ x @ wx


def naive_dft_quadruple(x):
    h, w = x.shape
    out = np.zeros((h, w), dtype=complex)
    for u in range(h):
        for v in range(w):
            acc = 0j
            for y in range(h):
                for xx in range(w):
                    acc += x[y, xx] * complex(math.cos(-2 * math.pi * (u * y / h + v * xx / w)),
                                              math.sin(-2 * math.pi * (u * y / h + v * xx / w)))
            out[u, v] = acc
    return out


def wrap(d):
    while d > math.pi:
        d -= 2 * math.pi
    while d <= -math.pi:
        d += 2 * math.pi
    return d


# ---------------------------------------------------------------- harris

def harris_count_loops(gray, k=0.04, rel=0.01):
    h, w = gray.shape
    gx = correlate_loops(gray, SOBEL_X)
    gy = correlate_loops(gray, SOBEL_Y)
    g = gaussian_kernel_loops(1.0, 5)
    sxx = correlate_loops(gx * gx, g)
    syy = correlate_loops(gy * gy, g)
    sxy = correlate_loops(gx * gy, g)
    resp = np.zeros((h, w))
    for y in range(h):
        for x in range(w):
            det = sxx[y, x] * syy[y, x] - sxy[y, x] ** 2
            tr = sxx[y, x] + syy[y, x]
            resp[y, x] = det - k * tr * tr
    peak = resp.max()
    if not peak > 1e-12:
        return 0
    mask = np.zeros((h, w), dtype=bool)
    for y in range(h):
        for x in range(w):
            neigh = max(resp[clamp(y + dy, 0, h - 1), clamp(x + dx, 0, w - 1)]
                        for dy in (-1, 0, 1) for dx in (-1, 0, 1))
            mask[y, x] = resp[y, x] >= neigh and resp[y, x] >= rel * peak
    seen = np.zeros_like(mask)
    count = 0
    for y in range(h):
        for x in range(w):
            if mask[y, x] and not seen[y, x]:
                count += 1
                queue = deque([(y, x)])
                seen[y, x] = True
                while queue:
                    cy, cx = queue.popleft()
                    for dy in (-1, 0, 1):
                        for dx in (-1, 0, 1):
                            ny, nx = cy + dy, cx + dx
                            if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not seen[ny, nx]:
                                seen[ny, nx] = True
                                queue.append((ny, nx))
    return count


# ---------------------------------------------------------------- IQM

def _ratio(num, den):
    return num / den if abs(den) >= 1e-12 else 0.0


def _edges(mag):
    rms = math.sqrt(sum(v * v for v in mag.flat) / mag.size)
    return mag > 2 * rms


def ssim_loops(a, b, win=8):
    c1 = (0.01 * 255) ** 2
    c2 = (0.03 * 255) ** 2
    h, w = a.shape
    wh, ww = min(win, h), min(win, w)
    vals = []
    for y in range(h - wh + 1):
        for x in range(w - ww + 1):
            pa = a[y:y + wh, x:x + ww].ravel()
            pb = b[y:y + wh, x:x + ww].ravel()
            n = pa.size
            ma = sum(pa) / n
            mb = sum(pb) / n
            va = sum((p - ma) ** 2 for p in pa) / n
            vb = sum((p - mb) ** 2 for p in pb) / n
            cab = sum((p - ma) * (q - mb) for p, q in zip(pa, pb)) / n
            vals.append(((2 * ma * mb + c1) * (2 * cab + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2)))
    return sum(vals) / len(vals)


def full_reference_loops(I, R, Ic, Rc):
    h, w = I.shape
    n = I.size
    d = [(float(I[y, x]) - float(R[y, x])) for y in range(h) for x in range(w)]
    sI2 = sum(float(v) ** 2 for v in I.flat)
    sR2 = sum(float(v) ** 2 for v in R.flat)
    se = sum(v * v for v in d)
    out = {}
    out["mse"] = se / n
    out["psnr"] = 100.0 if out["mse"] < 1e-12 else min(100.0, 10 * math.log10(255.0 ** 2 / out["mse"]))
    out["snr"] = 0.0 if se < 1e-12 or sI2 < 1e-12 else 10 * math.log10(sI2 / se)
    out["sc"] = _ratio(sI2, sR2)
    out["md"] = max(abs(v) for v in d)
    out["ad"] = sum(d) / n
    out["nae"] = _ratio(sum(abs(v) for v in d), sum(abs(float(v)) for v in I.flat))
    top = sorted((abs(v) for v in d), reverse=True)[:10]
    out["ramd"] = sum(top) / len(top)
    LI = correlate_loops(I, LAPLACIAN)
    LR = correlate_loops(R, LAPLACIAN)
    out["lmse"] = _ratio(sum((a - b) ** 2 for a, b in zip(LI.flat, LR.flat)), sum(a * a for a in LI.flat))
    out["nxc"] = _ratio(sum(a * b for a, b in zip(I.flat, R.flat)), sI2)

    sims, weighted = [], []
    for y in range(h):
        for x in range(w):
            a = [float(v) for v in Ic[y, x]]
            b = [float(v) for v in Rc[y, x]]
            cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            dot = sum(p * q for p, q in zip(a, b))
            na = math.sqrt(sum(p * p for p in a))
            nb = math.sqrt(sum(q * q for q in b))
            ang = 0.0 if na < 1e-12 or nb < 1e-12 else math.atan2(math.sqrt(sum(c * c for c in cross)), dot)
            dist = math.sqrt(sum((p - q) ** 2 for p, q in zip(a, b)))
            s = 1 - 2 * ang / math.pi
            sims.append(s)
            weighted.append(s * (1 - dist / (math.sqrt(3) * 255)))
    out["mas"] = sum(sims) / n
    out["mams"] = sum(weighted) / n

    gxi, gyi = correlate_loops(I, SOBEL_X), correlate_loops(I, SOBEL_Y)
    gxr, gyr = correlate_loops(R, SOBEL_X), correlate_loops(R, SOBEL_Y)
    mi = np.hypot(gxi, gyi)
    mr = np.hypot(gxr, gyr)
    ei, er = _edges(mi), _edges(mr)
    out["ted"] = sum(1 for a, b in zip(ei.flat, er.flat) if a != b) / n
    ci, cr = harris_count_loops(I), harris_count_loops(R)
    out["tcd"] = _ratio(abs(ci - cr), max(ci, cr))

    FI, FR = naive_dft(I), naive_dft(R)
    out["sme"] = sum((abs(a) - abs(b)) ** 2 for a, b in zip(FI.flat, FR.flat)) / n
    out["spe"] = sum(wrap(math.atan2(a.imag, a.real) - math.atan2(b.imag, b.real)) ** 2
                     for a, b in zip(FI.flat, FR.flat)) / n
    out["gme"] = sum((a - b) ** 2 for a, b in zip(mi.flat, mr.flat)) / n
    pi_ = [math.atan2(a, b) for a, b in zip(gyi.flat, gxi.flat)]
    pr_ = [math.atan2(a, b) for a, b in zip(gyr.flat, gxr.flat)]
    out["gpe"] = sum(wrap(a - b) ** 2 for a, b in zip(pi_, pr_)) / n
    out["ssim"] = ssim_loops(I, R)
    return out


def crete_loops(F):
    h, w = F.shape
    scores = []
    for vertical in (True, False):
        B = np.zeros((h, w))
        for y in range(h):
            for x in range(w):
                acc = 0.0
                for k in range(-4, 5):
                    acc += F[clamp(y + k, 0, h - 1), x] if vertical else F[y, clamp(x + k, 0, w - 1)]
                B[y, x] = acc / 9
        s_f = s_v = 0.0
        pairs = ([((y, x), (y - 1, x)) for y in range(1, h) for x in range(w)] if vertical
                 else [((y, x), (y, x - 1)) for y in range(h) for x in range(1, w)])
        for p, q in pairs:
            df = abs(F[p] - F[q])
            db = abs(B[p] - B[q])
            s_f += df
            s_v += max(0.0, df - db)
        scores.append(_ratio(s_f - s_v, s_f))
    return max(scores)


def marziliano_loops(F):
    h, w = F.shape
    gx = correlate_loops(F, SOBEL_X)
    edges = _edges(np.abs(gx))
    widths = []
    for y in range(h):
        for x in range(w):
            if not edges[y, x]:
                continue
            s = 1 if gx[y, x] > 0 else -1
            lo = x
            while lo > 0 and s * (F[y, lo] - F[y, lo - 1]) > 0:
                lo -= 1
            hi = x
            while hi < w - 1 and s * (F[y, hi + 1] - F[y, hi]) > 0:
                hi += 1
            widths.append(hi - lo)
    return sum(widths) / len(widths) if widths else 0.0


def no_reference_loops(rgb):
    h, w, _ = rgb.shape
    F = luma_loops(rgb)
    n = h * w
    out = {}
    mag = np.abs(naive_dft(F))
    r = 0.15 * min(h, w)
    low = high = 0.0
    for u in range(h):
        for v in range(w):
            fu = u if u < (h + 1) // 2 else u - h
            fv = v if v < (w + 1) // 2 else v - w
            if math.sqrt(fu * fu + fv * fv) <= r:
                low += mag[u, v]
            else:
                high += mag[u, v]
    out["hlfi"] = _ratio(abs(low - high), low + high)
    out["blur_crete"] = crete_loops(F)
    out["blur_marziliano"] = marziliano_loops(F)
    out["specularity_ratio"] = sum(1 for v in F.flat if v >= 0.95 * 255) / n
    hsv = [colorsys.rgb_to_hsv(*(rgb[y, x] / 255.0)) for y in range(h) for x in range(w)]
    for i in range(3):
        vals = [p[i] for p in hsv]
        mean = sum(vals) / n
        out[f"chroma_moment_{2 * i + 1}"] = mean
        out[f"chroma_moment_{2 * i + 2}"] = math.sqrt(sum((v - mean) ** 2 for v in vals) / n)
    colors = Counter()
    for y in range(h):
        for x in range(w):
            colors[tuple(min(int(c // 8), 31) for c in rgb[y, x])] += 1
    covered = 0
    needed = 0
    for _, c in colors.most_common():
        covered += c
        needed += 1
        if Fraction(covered, n) >= Fraction(99, 100):
            break
    out["color_diversity"] = needed / 32768
    return out


def iqm_loops(rgb, sigma=0.5, ksize=3):
    """Every measure for an RGB frame, blurred-self reference."""
    gray = luma_loops(rgb)
    kern = gaussian_kernel_loops(sigma, ksize)
    ref = correlate_loops(gray, kern)
    color_ref = np.stack([correlate_loops(rgb[:, :, c], kern) for c in range(3)], axis=2)
    out = full_reference_loops(gray, ref, rgb, color_ref)
    out.update(no_reference_loops(rgb))
    return out


# ---------------------------------------------------------------- metrics

def sweep_candidates(genuine, impostor):
    u = sorted(set(genuine) | set(impostor))
    mids = [(a + b) / 2.0 for a, b in zip(u, u[1:])]
    return sorted(set(u) | set(mids))


def far_exact(impostor, theta):
    return Fraction(sum(1 for s in impostor if s >= theta), len(impostor))


def frr_exact(genuine, theta):
    return Fraction(sum(1 for s in genuine if s < theta), len(genuine))


def sweep_table(genuine, impostor):
    """(threshold, FAR, FRR) for every candidate, counts via bisection."""
    g = sorted(genuine)
    i = sorted(impostor)
    out = []
    for t in sweep_candidates(genuine, impostor):
        fa = Fraction(len(i) - bisect.bisect_left(i, t), len(i))
        fr = Fraction(bisect.bisect_left(g, t), len(g))
        out.append((t, fa, fr))
    return out


def eer_sweep(genuine, impostor, table=None):
    table = table or sweep_table(genuine, impostor)
    t, fa, fr = min(table, key=lambda r: (abs(r[1] - r[2]), r[1] + r[2], r[0]))
    return float((fa + fr) / 2), t


def frr_at_far_sweep(genuine, impostor, target=0.1, table=None):
    table = table or sweep_table(genuine, impostor)
    for t, fa, fr in table:
        if fa <= Fraction(target):
            return float(fr), t
    top = max(max(genuine), max(impostor))
    return 1.0, float(np.nextafter(top, np.inf))


# ---------------------------------------------------------------- learning

def pca_oracle(X):
    """Eigenpairs of the covariance built by explicit outer-product sums."""
    n, d = X.shape
    mean = [sum(X[i, j] for i in range(n)) / n for j in range(d)]
    C = np.zeros((d, d))
    for i in range(n):
        v = X[i] - mean
        C += np.outer(v, v)
    C /= n - 1
    vals, vecs = np.linalg.eig(C)
    order = np.argsort(vals.real)[::-1]
    return vals.real[order], vecs.real[:, order]


def lda_oracle(Xp, Xn, ridge):
    mp, mn = Xp.mean(axis=0), Xn.mean(axis=0)
    d = Xp.shape[1]
    Sw = np.zeros((d, d))
    for X, m in ((Xp, mp), (Xn, mn)):
        for row in X:
            Sw += np.outer(row - m, row - m)
    w = np.linalg.inv(Sw + ridge * np.eye(d)) @ (mp - mn)
    return w / np.linalg.norm(w)


def svm_objective(w, b, X, y, C):
    w = np.atleast_1d(w)
    return 0.5 * (float(w @ w) + b * b) + C * sum(max(0.0, 1 - yi * (float(xi @ w) + b)) for xi, yi in zip(X, y))


def svm_grid_oracle(X, y, C, span=3.0, steps=121, refine=4):
    """Coarse-to-fine grid over (w, b) for 1-D or 2-D problems."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[0] == 1 and len(y) > 1:
        X = X.T
    d = X.shape[1]
    centre = np.zeros(d + 1)
    half = span
    best = None
    for _ in range(refine + 1):
        axes = [np.linspace(c - half, c + half, steps if d == 1 else 41) for c in centre]
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        W = pts[:, :d]
        B = pts[:, d]
        margins = y[None, :] * (W @ X.T + B[:, None])
        obj = 0.5 * (np.sum(W * W, axis=1) + B * B) + C * np.maximum(0, 1 - margins).sum(axis=1)
        i = int(np.argmin(obj))
        best = (obj[i], pts[i])
        centre = pts[i]
        half = half * 4 / (steps if d == 1 else 41)
    return best
