"""Regenerate airy_reference.csv: Ai and Ai' at 30 digits from mpmath."""
import random

import mpmath as mp

mp.mp.dps = 30
rng = random.Random(12)
print("re,im,ai_re,ai_im,aip_re,aip_im")
for _ in range(240):
    r = 12.0 * rng.random() ** 0.5
    z = mp.mpc(float(r) * float(mp.cos(t := 2 * mp.pi * rng.random())), float(r) * float(mp.sin(t)))
    a, ap = mp.airyai(z), mp.airyai(z, 1)
    print(",".join(mp.nstr(v, 25) for v in (z.real, z.imag, a.real, a.imag, ap.real, ap.imag)))
