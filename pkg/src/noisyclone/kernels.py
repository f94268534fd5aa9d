"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The inner loops that dominate runtime live here: the fused GRU cell
(forward and backward), the Gaussian-mixture attention weight kernel,
and the DTW cost recursion. Every kernel exists in two variants,
``*_np`` (pure numpy) and ``*_nb`` (numba ``@njit``); the public
unsuffixed names are bound at import time. Set ``NOISYCLONE_NO_NUMBA=1``
to force the numpy path, e.g. when debugging or on platforms without a
working numba install. ``benchmarks/bench_kernels.py`` compares the two
paths.

All kernels take and return C-contiguous float64 arrays; callers are
responsible for layout.
"""

from __future__ import annotations

import math
import os

import numpy as np

GMM_EPS = 1e-12  # guards the position-normalization against underflow

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# Fused GRU cell. Gate layout along columns: [reset | update | candidate].


def _gru_forward(x, h, w_ih, w_hh, b_ih, b_hh):
    gi = x @ w_ih + b_ih
    gh = h @ w_hh + b_hh
    H = h.shape[1]
    r = 1.0 / (1.0 + np.exp(-(gi[:, :H] + gh[:, :H])))
    u = 1.0 / (1.0 + np.exp(-(gi[:, H : 2 * H] + gh[:, H : 2 * H])))
    ghn = np.ascontiguousarray(gh[:, 2 * H :])
    n = np.tanh(gi[:, 2 * H :] + r * ghn)
    hn = (1.0 - u) * n + u * h
    return hn, r, u, n, ghn


def _gru_backward(go, x, h, r, u, n, ghn, w_ih, w_hh):
    dn = go * (1.0 - u)
    du = go * (h - n)
    dpre_n = dn * (1.0 - n * n)
    dr = dpre_n * ghn
    dpre_r = dr * r * (1.0 - r)
    dpre_u = du * u * (1.0 - u)
    dgi = np.concatenate((dpre_r, dpre_u, dpre_n), axis=1)
    dgh = np.concatenate((dpre_r, dpre_u, dpre_n * r), axis=1)
    dx = dgi @ w_ih.T
    dw_ih = x.T @ dgi
    db_ih = dgi.sum(axis=0)
    dh = go * u + dgh @ w_hh.T
    dw_hh = h.T @ dgh
    db_hh = dgh.sum(axis=0)
    return dx, dh, dw_ih, dw_hh, db_ih, db_hh


gru_forward_np = _gru_forward
gru_backward_np = _gru_backward
gru_forward_nb = njit(cache=True)(_gru_forward) if HAS_NUMBA else _gru_forward
gru_backward_nb = njit(cache=True)(_gru_backward) if HAS_NUMBA else _gru_backward


# ---------------------------------------------------------------------------
# Gaussian-mixture attention weights over encoder positions.
#
# alpha[b, j] = sum_k w[b,k] * exp(-(j - mu[b,k])^2 / (2 sigma[b,k]^2)),
# masked by token validity and normalized over j.


def gmm_weights_forward_np(w, mu, sigma, mask):
    pos = np.arange(mask.shape[1], dtype=np.float64)
    diff = pos[None, None, :] - mu[:, :, None]
    em = np.exp(-(diff**2) / (2.0 * sigma[:, :, None] ** 2)) * mask[:, None, :]
    phi = np.einsum("bk,bkn->bn", w, em)
    denom = phi.sum(axis=1) + GMM_EPS
    alpha = phi / denom[:, None]
    return alpha, em, denom


def gmm_weights_backward_np(galpha, w, mu, sigma, em, alpha, denom):
    pos = np.arange(alpha.shape[1], dtype=np.float64)
    gphi = (galpha - (galpha * alpha).sum(axis=1, keepdims=True)) / denom[:, None]
    dw = np.einsum("bn,bkn->bk", gphi, em)
    diff = pos[None, None, :] - mu[:, :, None]
    common = gphi[:, None, :] * w[:, :, None] * em
    inv_s2 = 1.0 / sigma**2
    dmu = (common * diff).sum(axis=2) * inv_s2
    dsigma = (common * diff**2).sum(axis=2) * inv_s2 / sigma
    return dw, dmu, dsigma


@njit(cache=True)
def _gmm_forward_loops(w, mu, sigma, mask):
    B, K = w.shape
    N = mask.shape[1]
    em = np.empty((B, K, N))
    phi = np.zeros((B, N))
    for b in range(B):
        for k in range(K):
            s2 = 2.0 * sigma[b, k] * sigma[b, k]
            for j in range(N):
                d = j - mu[b, k]
                e = math.exp(-(d * d) / s2) * mask[b, j]
                em[b, k, j] = e
                phi[b, j] += w[b, k] * e
    denom = np.empty(B)
    alpha = np.empty((B, N))
    for b in range(B):
        s = GMM_EPS
        for j in range(N):
            s += phi[b, j]
        denom[b] = s
        for j in range(N):
            alpha[b, j] = phi[b, j] / s
    return alpha, em, denom


@njit(cache=True)
def _gmm_backward_loops(galpha, w, mu, sigma, em, alpha, denom):
    B, K = w.shape
    N = alpha.shape[1]
    dw = np.zeros((B, K))
    dmu = np.zeros((B, K))
    dsigma = np.zeros((B, K))
    for b in range(B):
        inner = 0.0
        for j in range(N):
            inner += galpha[b, j] * alpha[b, j]
        for k in range(K):
            inv_s2 = 1.0 / (sigma[b, k] * sigma[b, k])
            aw = 0.0
            am = 0.0
            asig = 0.0
            for j in range(N):
                gphi = (galpha[b, j] - inner) / denom[b]
                e = em[b, k, j]
                d = j - mu[b, k]
                aw += gphi * e
                am += gphi * e * d
                asig += gphi * e * d * d
            dw[b, k] = aw
            dmu[b, k] = w[b, k] * am * inv_s2
            dsigma[b, k] = w[b, k] * asig * inv_s2 / sigma[b, k]
    return dw, dmu, dsigma


gmm_weights_forward_nb = _gmm_forward_loops if HAS_NUMBA else gmm_weights_forward_np
gmm_weights_backward_nb = (
    _gmm_backward_loops if HAS_NUMBA else gmm_weights_backward_np
)


# ---------------------------------------------------------------------------
# DTW suffix-cost recursion under steps {(1,0),(0,1),(1,1)} with Euclidean
# frame distance. Suffix (rather than prefix) accumulation lets the path be
# built front-to-back so step ties resolve in forward order.


def dtw_suffix_np(a, b):
    dist = np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2))
    ma, mb = dist.shape
    E = np.empty_like(dist)
    E[-1, -1] = dist[-1, -1]
    for j in range(mb - 2, -1, -1):
        E[-1, j] = dist[-1, j] + E[-1, j + 1]
    for i in range(ma - 2, -1, -1):
        E[i, -1] = dist[i, -1] + E[i + 1, -1]
        for j in range(mb - 2, -1, -1):
            E[i, j] = dist[i, j] + min(E[i + 1, j + 1], E[i + 1, j], E[i, j + 1])
    return E


@njit(cache=True)
def _dtw_suffix_loops(a, b):
    ma, D = a.shape
    mb = b.shape[0]
    E = np.empty((ma, mb))
    for i in range(ma - 1, -1, -1):
        for j in range(mb - 1, -1, -1):
            s = 0.0
            for d in range(D):
                diff = a[i, d] - b[j, d]
                s += diff * diff
            dist = math.sqrt(s)
            if i == ma - 1 and j == mb - 1:
                E[i, j] = dist
            elif i == ma - 1:
                E[i, j] = dist + E[i, j + 1]
            elif j == mb - 1:
                E[i, j] = dist + E[i + 1, j]
            else:
                m = E[i + 1, j + 1]
                if E[i + 1, j] < m:
                    m = E[i + 1, j]
                if E[i, j + 1] < m:
                    m = E[i, j + 1]
                E[i, j] = dist + m
    return E


dtw_suffix_nb = _dtw_suffix_loops if HAS_NUMBA else dtw_suffix_np


# ---------------------------------------------------------------------------
# Path selection.

_DISABLED = os.environ.get("NOISYCLONE_NO_NUMBA", "") == "1"
USING_NUMBA = HAS_NUMBA and not _DISABLED

if USING_NUMBA:
    gru_forward = gru_forward_nb
    gru_backward = gru_backward_nb
    gmm_weights_forward = gmm_weights_forward_nb
    gmm_weights_backward = gmm_weights_backward_nb
    dtw_suffix = dtw_suffix_nb
else:
    gru_forward = gru_forward_np
    gru_backward = gru_backward_np
    gmm_weights_forward = gmm_weights_forward_np
    gmm_weights_backward = gmm_weights_backward_np
    dtw_suffix = dtw_suffix_np
