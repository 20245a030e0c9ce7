"""Straight-line reference implementation used for differential testing.

Deliberately independent of the package under test: densities come from
scipy, the overlap is a literal fixed-step Riemann sum over
``np.arange(0, 1, 0.001)``, membership counting uses ``Counter``, and
removal loops all the way down to a single survivor before declaring the
set fragmented.  Slow and unidiomatic on purpose; its only job is to
disagree with ``betasieve`` if the fast path ever drifts.
"""
import io
from collections import Counter
from contextlib import redirect_stdout

import numpy as np
from scipy.stats import beta


def S(Ni, ni, Nj, nj):
    h = 0.001
    theta = np.arange(0, 1, h)
    pi = beta.pdf(theta, Ni + 1, ni - Ni + 1)
    pj = beta.pdf(theta, Nj + 1, nj - Nj + 1)
    minij = [min(a, b) for a, b in zip(pi, pj)]
    minij = np.array(minij)
    return np.sum(minij * h)


def out(N, n):
    k = len(N)
    Slist = []
    ilist = []
    jlist = []
    for i in range(k):
        for j in range(k):
            if i >= j:
                continue
            else:
                Slist.append(S(N[i], n[i], N[j], n[j]))
                ilist.append(i)
                jlist.append(j)
    ilist = np.array(ilist)
    jlist = np.array(jlist)
    Slist = np.array(Slist)
    ilist = ilist[np.argsort(Slist)]
    jlist = jlist[np.argsort(Slist)]
    ilist = ilist[: k - 1].tolist()
    jlist = jlist[: k - 1].tolist()
    l = ilist + jlist
    counter = Counter(l)
    mce, mcc = counter.most_common(1)[0]
    if mcc < k - 1:
        return -1
    else:
        return mce


def main(N, n):
    if len(N) != len(n):
        print('len(N)!=len(n)')
        return -1
    d = np.array(n) - np.array(N)
    if len(d[d < 0]) > 0:
        print("n < N")
        return -1
    outN = []
    outn = []
    output = len(N) + 1
    while output >= 0:
        output = out(N, n)
        if output >= 0:
            outN.append(N[output])
            outn.append(n[output])
            N = N[:output] + N[output + 1:]
            n = n[:output] + n[output + 1:]
            if len(N) == 1:
                print('Fragmented!')
                outN.append(N[0])
                outn.append(n[0])
                return N, n, outN, outn
        else:
            return N, n, outN, outn


def checklist_pairs(N, n):
    """The (i, j) index pairs of the k-1 smallest similarities, argsort order."""
    k = len(N)
    Slist, ilist, jlist = [], [], []
    for i in range(k):
        for j in range(i + 1, k):
            Slist.append(S(N[i], n[i], N[j], n[j]))
            ilist.append(i)
            jlist.append(j)
    order = np.argsort(np.array(Slist))
    return [(ilist[m], jlist[m]) for m in order[: k - 1]]


def reference_run(N, n):
    """(removed (N, n) sequence, fragmented flag) from the reference code."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        result = main(list(N), list(n))
    assert result is not None, "reference run rejected its input"
    _, _, outN, outn = result
    fragmented = 'Fragmented!' in buf.getvalue()
    return list(zip(outN, outn)), fragmented
