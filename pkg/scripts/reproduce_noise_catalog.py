#!/usr/bin/env python3
"""Tabulate the physical-noise catalog: fidelity, deviation, and the UQT
verdict of the Bell output for each channel family at a few working points.

Only the two depolarizing rows should ever print uqt=True.
"""

import numpy as np

from uqtchan import channels, families, states

POINTS = {
    "depolarizing_m": [{"p": p} for p in (0.1, 0.3, 0.45, 0.6)],
    "dephasing_m": [{"p": p} for p in (0.1, 0.3, 0.5, 0.75)],
    "adc_m": [{"gamma": 1.0, "t": t} for t in (0.1, 0.5, 1.0)],
    "pln_m": [{"G": 1.0, "t": t} for t in (0.2, 0.7, 1.5)],
    "oun_m": [{"G": 1.0, "t": t} for t in (0.5, 1.4, 3.0)],
    "unruh": [{"r": r} for r in (np.pi / 16, np.pi / 8, np.pi / 4)],
    "depolarizing_nm": [{"alpha": a, "p": 0.1} for a in (0.25, 0.5, 1.0)],
    "dephasing_nm": [{"alpha": a, "p": p} for a, p in ((0.5, 0.1), (0.8, 0.2), (1.0, 0.45))],
    "adc_nm": [{"R": 1.0, "gamma": 1.0, "omega0": 2.0, "g": 1.0, "t": t} for t in (0.5, 1.0, 3.0)],
    "pln_nm": [{"G": 1.0, "g": 1.0, "t": t} for t in (0.3, 1.0, 2.0)],
    "oun_nm": [{"G": 1.0, "g": 1.0, "t": t} for t in (0.5, 1.5, 3.0)],
    "rtn_nm": [{"g": 1.0, "omega": 0.5, "t": t} for t in (0.1, 0.3, 0.6)],
}


def main():
    bell = states.bell_state(1)
    print(f"{'family':17s} {'params':42s} {'F':>10s} {'delta':>10s} "
          f"{'unital':>7s} {'rank':>4s} {'uqt':>5s}")
    for family_id in families.NOISE_IDS:
        for params in POINTS[family_id]:
            ch = families.noise_channel(family_id, **params)
            prof = states.profile(channels.apply_to_bob(bell, ch))
            rep = channels.report(ch)
            ptext = " ".join(f"{k}={v:g}" for k, v in params.items())
            f_text = f"{prof.f_max:.6f}" if prof.f_max is not None else "n/a"
            d_text = f"{prof.delta:.6f}" if prof.delta is not None else "n/a"
            print(f"{family_id:17s} {ptext:42s} {f_text:>10s} {d_text:>10s} "
                  f"{str(rep.unital):>7s} {rep.choi_rank:>4d} {str(prof.uqt):>5s}")


if __name__ == "__main__":
    main()
