"""Figure rendering for the report paths (rate curves, scan summaries)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_GOLDEN = (1 + 5**0.5) / 2
FIGSIZE = (6.0, 6.0 / _GOLDEN)


def render_rate_curve(points, path, label="schedule rate"):
    """Plot capacity and achieved rate against the number of stored files.

    points: iterable of (f, capacity, rate) with exact rationals or floats.
    """
    fs = [p[0] for p in points]
    caps = [float(p[1]) for p in points]
    rates = [float(p[2]) for p in points]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(fs, caps, "o-", label="MDS-PIR capacity")
    ax.plot(fs, rates, "s--", label=label)
    ax.set_xlabel("stored files")
    ax.set_ylabel("rate")
    ax.set_ylim(bottom=0)
    ax.legend(frameon=False)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def render_scan_summary(rows, path):
    """Stacked bar chart of scan outcomes per (n, k)."""
    groups = {}
    for r in rows:
        key = (r.n, r.k)
        g = groups.setdefault(key, {"agree": 0, "disagree": 0, "indeterminate": 0})
        if r.agree is None:
            g["indeterminate"] += 1
        elif r.agree:
            g["agree"] += 1
        else:
            g["disagree"] += 1
    keys = sorted(groups)
    labels = [f"[{n},{k}]" for n, k in keys]
    agree = [groups[k]["agree"] for k in keys]
    disagree = [groups[k]["disagree"] for k in keys]
    indet = [groups[k]["indeterminate"] for k in keys]
    fig, ax = plt.subplots(figsize=(max(FIGSIZE[0], 0.4 * len(keys)), FIGSIZE[1]))
    x = range(len(keys))
    ax.bar(x, agree, label="agree", color="#4a7fb5")
    ax.bar(x, disagree, bottom=agree, label="disagree", color="#c44e52")
    bottom2 = [a + d for a, d in zip(agree, disagree)]
    ax.bar(x, indet, bottom=bottom2, label="indeterminate", color="#bbbbbb")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("codes")
    ax.legend(frameon=False)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
