"""The twelve acceptance criteria, each at its stated tolerance. One PASS/FAIL line per criterion."""

import time

import numpy as np

from conftest import rel_err
from sdct.apps import GrayImage, amdahl_speedup, compress, encode_pgm, parse_pgm
from sdct.bench import bench
from sdct.dct1d import Algorithm, dct_1d, idct_1d
from sdct.dct2d import dct_2d, dct_2d_rowcol, idct_2d, idct_2d_rowcol
from sdct.executor import ExecConfig, StageCounters
from sdct.ext import (dct_3d, dct_nd_factorized, idct_3d, idct_idxst_2d, idct_idxst_2d_rowcol, idxst_1d,
                      idxst_idct_2d, idxst_idct_2d_rowcol)
from sdct.fft import dft_naive, rfft_1d
from sdct.oracle import (dct_oracle_1d, dct_oracle_2d, dct_oracle_nd, idct_oracle_1d, idct_oracle_nd,
                         idxst_oracle_1d)

TOL = 1e-10
SEED = 7


def rng():
    return np.random.default_rng(SEED)


def test_ac01_oracle_1d(criterion):
    def run():
        t0 = time.perf_counter()
        r = rng()
        worst = 0.0
        for n in [*range(1, 18), 32, 64, 100, 101, 128, 256]:
            x = r.standard_normal(n)
            ref = dct_oracle_1d(x).values
            worst = max(worst, *(rel_err(dct_1d(x, alg), ref) for alg in Algorithm))
        secs = time.perf_counter() - t0
        return worst <= TOL and secs < 30, f"max rel err {worst:.2e}, {secs:.1f}s"

    criterion(1, "1D oracle equivalence, four variants", run)


def test_ac02_oracle_2d(criterion):
    def run():
        t0 = time.perf_counter()
        r = rng()
        shapes = [(a, b) for a in range(1, 9) for b in range(1, 9)] + [(5, 7), (16, 12), (31, 17), (64, 64)]
        worst = 0.0
        for shape in shapes:
            x = r.standard_normal(shape)
            ref = dct_oracle_2d(x).values
            worst = max(worst, rel_err(dct_2d(x), ref), rel_err(dct_2d_rowcol(x), ref))
        secs = time.perf_counter() - t0
        return worst <= TOL and secs < 60, f"{len(shapes)} shapes, max rel err {worst:.2e}, {secs:.1f}s"

    criterion(2, "2D oracle equivalence, fused and row-column", run)


def test_ac03_round_trips(criterion):
    def run():
        r = rng()
        # constants first, from the oracles alone
        x1, x2, x3 = r.standard_normal(9), r.standard_normal((6, 5)), r.standard_normal((3, 4, 2))
        consts = [
            rel_err(idct_oracle_1d(dct_oracle_1d(x1).values).values, 9 / 2 * x1),
            rel_err(idct_oracle_nd(dct_oracle_nd(x2).values).values, 30 / 4 * x2),
            rel_err(idct_oracle_nd(dct_oracle_nd(x3).values).values, 24 / 8 * x3),
        ]
        errs = []
        for n in [1, 2, 7, 64, 100, 1000]:
            x = r.standard_normal(n)
            errs.append(rel_err(idct_1d(dct_1d(x)), n / 2 * x))
        for shape in [(1, 1), (8, 8), (7, 12), (33, 20)]:
            x = r.standard_normal(shape)
            errs.append(rel_err(idct_2d(dct_2d(x)), np.prod(shape) / 4 * x))
        for shape in [(1, 1, 1), (4, 5, 6), (8, 8, 8), (3, 1, 7)]:
            x = r.standard_normal(shape)
            errs.append(rel_err(idct_3d(dct_3d(x)), np.prod(shape) / 8 * x))
        worst = max(consts + errs)
        return worst <= TOL, f"max rel err {worst:.2e} (oracle constants {max(consts):.1e})"

    criterion(3, "round trips N/2, N1N2/4, N1N2N3/8", run)


def test_ac04_stage_accounting(criterion):
    def run():
        r = rng()
        seen = set()
        for shape in [(1, 1), (8, 8), (7, 5), (64, 48), (2, 300)]:
            x = r.standard_normal(shape)
            fused, rowcol = StageCounters(), StageCounters()
            dct_2d(x, counters=fused)
            dct_2d_rowcol(x, counters=rowcol)
            seen.add((fused.full_tensor_stages, rowcol.full_tensor_stages))
        ok = seen == {(3, 8)}
        return ok, f"fused/row-column stages {sorted(seen)}, traffic reduction {1 - 3 / 8:.1%}"

    criterion(4, "stage accounting 3 vs 8", run)


def test_ac05_single_touch(criterion):
    def run():
        r = rng()
        bad = []
        shapes = [(8, 8), (6, 10), (7, 5), (9, 4), (4, 9), (1, 1), (1, 6), (5, 1), (31, 17)]
        for n1, n2 in shapes:
            c = StageCounters()
            dct_2d(r.standard_normal((n1, n2)), orientation="direct", counters=c)
            post = c.stage("postprocess").tally
            if (post.reads, post.writes) != (n1 * (n2 // 2 + 1), n1 * n2):
                bad.append((n1, n2, post.reads, post.writes))
        return not bad, f"{len(shapes)} shapes, mismatches {bad}"

    criterion(5, "postprocess reads N1(N2/2+1), writes N1N2", run)


def test_ac06_table2_arithmetic(criterion):
    def run():
        c = StageCounters()
        dct_2d(rng().standard_normal((8, 8)), counters=c)
        items, mults, adds = c.stage("postprocess").tally.items["interior"]
        m, a = mults / items, adds / items
        return (m, a) == (16, 12), f"{items} interior items, {m:g} mults and {a:g} adds each"

    criterion(6, "interior work item costs 16 mults, 12 adds", run)


def test_ac07_hermitian(criterion):
    def run():
        r = rng()
        worst = 0.0
        for n in [*range(1, 18), 100]:
            x = r.standard_normal(n)
            worst = max(worst, rel_err(rfft_1d(x).full(), dft_naive(x)))
        full = rfft_1d(r.standard_normal(5)).full()
        foot = max(abs(full[1] - np.conj(full[4])), abs(full[2] - np.conj(full[3])))
        return worst <= TOL and foot <= 1e-12, f"max rel err {worst:.2e}, N=5 identities {foot:.1e}"

    criterion(7, "Hermitian half spectrum expands to full DFT", run)


def test_ac08_idxst_composites(criterion):
    def run():
        r = rng()
        errs = []
        for n in range(1, 13):
            x = r.standard_normal(n)
            errs.append(rel_err(idxst_1d(x), idxst_oracle_1d(x).values))
        shapes = [(a, b) for a in range(1, 9) for b in range(1, 9)] + [(512, 512)]
        for shape in shapes:
            x = r.standard_normal(shape)
            errs.append(rel_err(idct_idxst_2d(x), idct_idxst_2d_rowcol(x)))
            errs.append(rel_err(idxst_idct_2d(x), idxst_idct_2d_rowcol(x)))
        worst = max(errs)
        return worst <= TOL, f"max rel err {worst:.2e} incl. 512x512"

    criterion(8, "IDXST and fused composites", run)


def test_ac09_determinism(criterion):
    def run():
        r = rng()
        v, m, c, q = (r.standard_normal(s) for s in [(3000,), (70, 45), (12, 10, 9), (4, 5, 3, 6)])
        cases = {
            **{f"dct1-{a.value}": (lambda cfg, a=a: dct_1d(v, a, config=cfg)) for a in Algorithm},
            "idct1": lambda cfg: idct_1d(v, config=cfg),
            "idxst1": lambda cfg: idxst_1d(v, config=cfg),
            "dct2": lambda cfg: dct_2d(m, config=cfg),
            "dct2-transposed": lambda cfg: dct_2d(m.T.copy()[:, :10], config=cfg),
            "idct2": lambda cfg: idct_2d(m, config=cfg),
            "dct2-rowcol": lambda cfg: dct_2d_rowcol(m, config=cfg),
            "idct2-rowcol": lambda cfg: idct_2d_rowcol(m, config=cfg),
            "idct-idxst": lambda cfg: idct_idxst_2d(m, config=cfg),
            "idxst-idct": lambda cfg: idxst_idct_2d(m, config=cfg),
            "dct3": lambda cfg: dct_3d(c, config=cfg),
            "idct3": lambda cfg: idct_3d(c, config=cfg),
            "rank4": lambda cfg: dct_nd_factorized(q, config=cfg),
        }
        differ = []
        for name, fn in cases.items():
            outs = [fn(ExecConfig(d, chunk_size=64)) for d in (1, 2, 4, 8)]
            if not all(np.array_equal(outs[0], o) for o in outs[1:]):
                differ.append(name)
        return not differ, f"{len(cases)} transforms, differing {differ}"

    criterion(9, "bitwise determinism across degrees 1,2,4,8", run)


def test_ac10_performance_smoke(criterion):
    def run():
        t0 = time.perf_counter()
        runs = 20
        n_point = bench((1 << 18,), "dct1", runs, baseline=False)
        four_n = bench((1 << 18,), "dct1", runs, algorithm="4n", baseline=False)
        r1024 = bench((1024, 1024), "dct2", runs)
        r2048 = bench((2048, 2048), "dct2", runs)
        secs = time.perf_counter() - t0
        ok = (n_point.mean_ms <= four_n.mean_ms and r1024.mean_ms <= r1024.baseline_mean_ms
              and r2048.mean_ms <= r2048.baseline_mean_ms and secs < 300)
        detail = (f"1D N-point {n_point.mean_ms:.1f} vs 4N {four_n.mean_ms:.1f} ms; "
                  f"fused/row-column ratio 1024^2 {r1024.speedup_vs_baseline:.2f}x, "
                  f"2048^2 {r2048.speedup_vs_baseline:.2f}x; {secs:.0f}s")
        return ok, detail

    criterion(10, "performance ordering", run)


def test_ac11_compression(criterion):
    def run():
        r = rng()
        yy, xx = np.mgrid[0:40, 0:56]
        imgs = [r.integers(0, 256, (33, 47)), (xx * 4 + yy * 2) % 256, np.full((8, 8), 255), np.zeros((1, 1))]
        lossless = all(
            parse_pgm(encode_pgm(compress(GrayImage.from_array(a), 0.0).image)).samples.tolist() == a.tolist()
            for a in imgs)
        eps = [0, 1, 10, 100, 1e3, 1e4, 1e5, np.inf]
        img = GrayImage.from_array(imgs[0])
        fracs = [compress(img, e).zero_fraction for e in eps]
        monotone = all(a <= b for a, b in zip(fracs, fracs[1:]))
        return lossless and monotone, f"eps=0 exact on {len(imgs)} images, zero fractions {[round(f, 3) for f in fracs]}"

    criterion(11, "compression: lossless at eps=0, monotone zero fraction", run)


def test_ac12_amdahl(criterion):
    def run():
        cases = [((1.0, 2.0), 2.0), ((0.0, 10.0), 1.0), ((0.5, 2.0), 4 / 3)]
        errs = [abs(amdahl_speedup(*args) - want) for args, want in cases]
        return max(errs) <= 1e-15, f"max abs err {max(errs):.1e}"

    criterion(12, "Amdahl speedup", run)
