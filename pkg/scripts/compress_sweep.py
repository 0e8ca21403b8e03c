"""Sweep the threshold on a PGM (or a synthetic test card) and report zero fraction and PSNR."""

import argparse

import numpy as np

from sdct.apps import GrayImage, compress, read_pgm, write_pgm


def test_card(h=256, w=256) -> GrayImage:
    yy, xx = np.mgrid[0:h, 0:w]
    img = 128 + 60 * np.sin(xx / 9.0) * np.cos(yy / 13.0) + 40 * ((xx // 32 + yy // 32) % 2)
    return GrayImage.from_array(np.clip(img, 0, 255).astype(np.uint8))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("image", nargs="?")
    ap.add_argument("--epsilons", default="0,10,100,1000,5000,20000")
    ap.add_argument("--save", default=None, help="write the reconstruction at the largest epsilon")
    args = ap.parse_args()
    img = read_pgm(args.image) if args.image else test_card()
    print(f"{'epsilon':>10} {'zero_frac':>10} {'psnr_db':>8}")
    res = None
    for e in map(float, args.epsilons.split(",")):
        res = compress(img, e)
        print(f"{e:10g} {res.zero_fraction:10.4f} {res.psnr_text():>8}")
    if args.save and res is not None:
        write_pgm(args.save, res.image)


if __name__ == "__main__":
    main()
