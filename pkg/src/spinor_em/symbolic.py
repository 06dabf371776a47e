"""Symbolic check that the four-component equation reproduces Maxwell's equations.

One Fourier mode with arbitrary real amplitudes, phase ``theta = k.x - w t``:

    E = e_c cos(theta) + e_s sin(theta), same for B, j and rho (xi = 0).

The imaginary-time equation ``sum_mu Lambda_mu d_mu phi = sqrt(mu0/2) J`` with
``d_4 = -i d_t`` and ``J = (j, i rho)`` is expanded, split into real and
imaginary parts, and compared component by component with Maxwell's
equations. The real-time form used by the steppers is checked to be ``-i``
times the same residual.
"""
import sympy as sp

from .algebra import lambda_matrices


def _sym_lambda():
    return [sp.Matrix(4, 4, lambda a, b, m=m: sp.nsimplify(complex(m[a, b]).real) + sp.I * sp.nsimplify(complex(m[a, b]).imag))
            for m in lambda_matrices()]


def _mode_field(name, theta, n=3):
    cos_amp = sp.symbols(f"{name}c0:{n}", real=True)
    sin_amp = sp.symbols(f"{name}s0:{n}", real=True)
    return [c * sp.cos(theta) + s * sp.sin(theta) for c, s in zip(cos_amp, sin_amp)]


def maxwell_equivalence(d4_sign=-1):
    """Return ``{check_name: bool}``; every entry is True when the expansion matches.

    ``d4_sign`` sets ``d_4 = d4_sign * i * d_t``; the flipped sign is used in
    tests to show the check can fail.
    """
    x = sp.symbols("x0:3", real=True)
    t = sp.Symbol("t", real=True)
    k = sp.symbols("k0:3", real=True)
    w = sp.Symbol("w", real=True)
    mu0 = sp.Symbol("mu0", positive=True)
    theta = sum(ki * xi for ki, xi in zip(k, x)) - w * t
    e = _mode_field("E", theta)
    b = _mode_field("B", theta)
    j = _mode_field("j", theta)
    (rho,) = _mode_field("rho", theta, 1)

    def d(f, a):
        return sp.diff(f, x[a]) if a < 3 else d4_sign * sp.I * sp.diff(f, t)

    def curl(v):
        return [sp.diff(v[2], x[1]) - sp.diff(v[1], x[2]),
                sp.diff(v[0], x[2]) - sp.diff(v[2], x[0]),
                sp.diff(v[1], x[0]) - sp.diff(v[0], x[1])]

    def div(v):
        return sum(sp.diff(v[a], x[a]) for a in range(3))

    phi = sp.Matrix([(bb + sp.I * ee) / sp.sqrt(2 * mu0) for bb, ee in zip(b, e)] + [0])
    cur = sp.Matrix([*j, sp.I * rho])
    lam = _sym_lambda()
    lhs = sp.zeros(4, 1)
    for mu in range(4):
        lhs += lam[mu] * phi.applyfunc(lambda f, mu=mu: d(f, mu))
    resid = (lhs - sp.sqrt(mu0 / 2) * cur) * sp.sqrt(2 * mu0)
    resid = resid.applyfunc(lambda z: sp.expand(z))

    curl_b, curl_e = curl(b), curl(e)
    ampere = [curl_b[a] - sp.diff(e[a], t) - mu0 * j[a] for a in range(3)]
    faraday = [curl_e[a] + sp.diff(b[a], t) for a in range(3)]
    checks = {}
    for a in range(3):
        checks[f"ampere-{a}"] = sp.expand(sp.re(resid[a]) - ampere[a]) == 0
        checks[f"faraday-{a}"] = sp.expand(sp.im(resid[a]) - faraday[a]) == 0
    checks["gauss-magnetic"] = sp.expand(sp.re(resid[3]) - div(b)) == 0
    checks["gauss-electric"] = sp.expand(sp.im(resid[3]) - (div(e) - mu0 * rho)) == 0

    # real-time form: d_t phi - [i sum_j Lambda_j d_j phi - i sqrt(mu0/2) J] = -i * residual / sqrt(2 mu0)
    rt = phi.applyfunc(lambda f: sp.diff(f, t))
    for a in range(3):
        rt -= sp.I * lam[a] * phi.applyfunc(lambda f, a=a: sp.diff(f, x[a]))
    rt += sp.I * sp.sqrt(mu0 / 2) * cur
    diff = (rt + sp.I * resid / sp.sqrt(2 * mu0)).applyfunc(sp.expand)
    checks["real-time-form"] = all(z == 0 for z in diff)
    return checks
