"""Walk through the hyperelliptic pencil on x^7 - 1 and its deformation.

Run with ``python3 demos/obstructed_pencil.py``.
"""

from petrikit import catalog
from petrikit.curve import Divisor, riemann_roch_space
from petrikit.deform import SchifferLift, contraction_pairing, kernel_model, obstruction_pairing
from petrikit.petri import build_mu0, mu_next


def main():
    c = catalog.curve("g3_x7m1")
    d = Divisor({c.infinity: 2})
    print("sections of 2*inf:", [str(s) for s in riemann_roch_space(c, d)])

    pm = build_mu0(c, d)
    print(f"mu0: {pm.domain_dim} -> {pm.matrix.shape[0]}, rank {pm.rank}")
    kappa = pm.kernel[0]
    print("kernel spanned by", kappa.label())
    res = mu_next(pm, kappa)
    print("mu1(kappa) =", res.value, "| nonzero:", res.nonzero)

    # x^7 - 1 has no rational unramified point, so move to x^7 - x + 1 to mark one
    c2 = catalog.curve("g3_x7mxp1")
    d2 = Divisor({c2.infinity: 2})
    lift = SchifferLift.from_terms(c2.place(1, 1), {1: {-1: 1}}, {}, c2)
    pm2 = build_mu0(c2, d2)
    k2 = pm2.kernel[0]
    print("\non x^7 - x + 1, Schiffer lift b1 = z^-1 at (1, 1)")
    print("h0 along t-orders:", kernel_model(lift, d2, 0, 3))
    print("obstruction pairing:", obstruction_pairing(lift, k2, pm2))
    print("contraction route:  ", contraction_pairing(lift, k2, pm2))


if __name__ == "__main__":
    main()
