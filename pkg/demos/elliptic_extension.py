"""Extend the sections of 2*inf on y^2 = x^3 + 1 along a random Schiffer lift.

Nothing is obstructed in genus one, so every section extends as far as asked.
"""

import random

from petrikit import catalog
from petrikit.curve import Divisor, riemann_roch_space
from petrikit.deform import extend_section, kernel_model
from petrikit.verify import random_lift


def main(seed=3, n_t=5):
    c = catalog.curve("g1_x3p1")
    b0 = Divisor({c.infinity: 2})
    rng = random.Random(seed)
    lift = random_lift(rng, c, c.place(2, 3), orders=2, depth=1)
    print("b1 terms:", dict(lift.b(1).terms), " b2 terms:", dict(lift.b(2).terms))
    for s0 in riemann_roch_space(c, b0):
        r = extend_section(lift, s0, b0, n_t)
        print(f"section {s0}: achieved t-order {r.achieved_order}")
    print("h0 along t-orders:", kernel_model(lift, b0, 0, n_t))


if __name__ == "__main__":
    main()
