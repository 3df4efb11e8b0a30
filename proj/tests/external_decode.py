#!/usr/bin/env python3
"""Decode a plain PBM with OpenCV, straight and transposed.

usage: external_decode.py image.pbm TEXT_A [TEXT_B]
Exits 77 (skip) when OpenCV is unavailable.
"""
import sys

try:
    import cv2
    import numpy as np
except ImportError:
    print("opencv not available; skipping")
    sys.exit(77)


def load_pbm(path):
    tokens = []
    with open(path) as f:
        for line in f:
            tokens.extend(line.split("#", 1)[0].split())
    if tokens[0] != "P1":
        raise ValueError("not a P1 image")
    w, h = int(tokens[1]), int(tokens[2])
    bits = "".join(tokens[3:])
    img = np.array([0 if c == "1" else 255 for c in bits[: w * h]], dtype=np.uint8)
    return img.reshape(h, w)


def decode(img):
    big = cv2.resize(img, None, fx=10, fy=10, interpolation=cv2.INTER_NEAREST)
    text, _, _ = cv2.QRCodeDetector().detectAndDecode(big)
    return text


def main():
    img = load_pbm(sys.argv[1])
    ok = True
    straight = decode(img)
    print(f"straight: {straight!r}")
    ok &= straight == sys.argv[2]
    if len(sys.argv) > 3:
        transposed = decode(np.ascontiguousarray(img.T))
        print(f"transposed: {transposed!r}")
        ok &= transposed == sys.argv[3]
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
