"""Command-line interface.

Subcommands
-----------
derive         construct the generator orders Q_1..Q_N and print each one
verify-tables  run the cross-check battery (exit 1 if any check fails)
observables    dressed position/momentum and the equivalent Hermitian form
classical      classical limit of the equivalent Hermitian Hamiltonian
orbit          integrate closed classical orbits and write t,x,p,H samples
free-particle  exact parity-twisted metric for the free Hamiltonian

Free amplitudes are given as exact rationals ("3/4") or the word
"formal"; unset amplitudes stay formal.  For ``free-particle`` the same
two flags are reused with a different meaning, documented in their help
text: --l1 is the overall scale e^-lambda and --k1 the parity ratio
e^kappa.

A JSON config file (--config) may supply any long option of the chosen
subcommand, spelled with underscores; explicit flags win.  Exit codes:
0 success (flagged table deviations included), 1 broken engine invariant
or failed verification, 2 bad command line or config file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import EngineError
from .freeparticle import (free_metric, inner_product_weights,
                           localized_weights, momentum_observable,
                           position_observable)
from .observables import (classical_limit, equivalent_hermitian,
                          observable_p, observable_x)
from .perturbation import MetricParams, derive_metric_series
from .verify import run_verification

__all__ = ["main"]


class ConfigError(Exception):
    pass


_PARAM_FLAGS = ("l1", "l2", "l3", "k1", "k2", "k3")


def _rational(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{flag}: {text!r} is not a rational number") from exc


def _param_value(text: str, flag: str):
    if text == "formal":
        return "formal"
    return _rational(text, flag)


def _metric_params(ns, order: int) -> MetricParams:
    lam = [_param_value(getattr(ns, f"l{j}") or "formal", f"--l{j}")
           for j in range(1, min(order, 3) + 1)]
    kap = [_param_value(getattr(ns, f"k{j}") or "formal", f"--k{j}")
           for j in range(1, min(order, 3) + 1)]
    lam += ["formal"] * (order - len(lam))
    kap += ["formal"] * (order - len(kap))
    return MetricParams.numeric(order, lam, kap)


def _emit(ns, text: str) -> None:
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _param_echo(params: MetricParams) -> dict:
    out = {}
    for j in range(1, params.order + 1):
        out[f"l{j}"] = str(params.lam_at(j))
        out[f"k{j}"] = str(params.kap_at(j))
    return out


# -- subcommand bodies -------------------------------------------------------

def _cmd_derive(ns) -> int:
    params = _metric_params(ns, ns.order)
    qs = derive_metric_series(params)
    if ns.format == "json":
        doc = {"order": ns.order, "params": _param_echo(params),
               "q": {str(j): str(qs.q(j)) for j in range(1, ns.order + 1)}}
        _emit(ns, json.dumps(doc, indent=2) + "\n")
        return 0
    lines = ["order %d metric generator; parameters: %s" % (
        ns.order, " ".join(f"{k}={v}" for k, v in _param_echo(params).items()))]
    for j in range(1, ns.order + 1):
        lines.append(f"Q_{j} = {qs.q(j)}")
    _emit(ns, "\n".join(lines) + "\n")
    return 0


def _cmd_verify(ns) -> int:
    report = run_verification(workers=ns.jobs)
    _emit(ns, report.render())
    return 1 if report.failed else 0


def _series_doc(label: str, series) -> list:
    return [(f"{label}[{j}]", str(series.coeff(j)))
            for j in range(series.order + 1) if not series.coeff(j).is_zero()]


def _cmd_observables(ns) -> int:
    params = _metric_params(ns, ns.order)
    qs = derive_metric_series(params)
    xo, po = observable_x(qs), observable_p(qs)
    h = equivalent_hermitian(qs)
    blocks = _series_doc("X", xo) + _series_doc("P", po) + _series_doc("h", h)
    if ns.format == "json":
        doc = {"order": ns.order, "params": _param_echo(params),
               "coefficients": {k: v for k, v in blocks}}
        _emit(ns, json.dumps(doc, indent=2) + "\n")
        return 0
    lines = [f"{k} = {v}" for k, v in blocks]
    _emit(ns, "\n".join(lines) + "\n")
    return 0


def _classical_text(term) -> str:
    j, a, b, c, mpow = term
    parts = [f"({c})"]
    if mpow:
        parts.append("m" if mpow == 1 else f"m^{mpow}")
    if j:
        parts.append(f"eps^{j}" if j != 1 else "eps")
    if a:
        parts.append(f"x^{a}" if a != 1 else "x")
    if b:
        parts.append(f"p^{b}" if b != 1 else "p")
    return " ".join(parts)


def _cmd_classical(ns) -> int:
    mass = _rational(ns.mass, "--mass")
    if mass <= 0:
        raise ConfigError(f"--mass: {ns.mass!r} is not positive")
    qs = derive_metric_series(MetricParams.formal(ns.order))
    hc = classical_limit(equivalent_hermitian(qs), mass=mass)
    terms = sorted(hc.terms)
    if ns.format == "json":
        doc = {"order": ns.order, "mass": str(mass),
               "terms": [{"eps": j, "x": a, "p": b, "coeff": str(c),
                          "mass_power": mpow} for j, a, b, c, mpow in terms]}
        _emit(ns, json.dumps(doc, indent=2) + "\n")
        return 0
    _emit(ns, "H_c = " + " + ".join(_classical_text(t) for t in terms) + "\n")
    return 0


def _cmd_orbit(ns) -> int:
    from .flow import integrate_orbit

    if ns.order != 2:
        raise ConfigError("--order: the orbit integrator uses the order-2"
                          " classical Hamiltonian")
    mass = _rational(ns.mass, "--mass")
    if mass <= 0:
        raise ConfigError(f"--mass: {ns.mass!r} is not positive")
    qs = derive_metric_series(MetricParams.formal(2))
    hc = classical_limit(equivalent_hermitian(qs), mass=mass)
    p0 = ns.init_p if ns.init_p is not None else None
    orbit = integrate_orbit(hc, ns.epsilon, x0=ns.init_x, p0=p0, dt=ns.dt,
                            periods=ns.periods, max_steps=ns.steps)
    if ns.out:
        orbit.to_csv(ns.out)
    else:
        orbit.to_csv(sys.stdout)
    summary = sys.stderr if not ns.out else sys.stdout
    period = "none" if orbit.period is None else "%.12e" % orbit.period
    closure = "none" if orbit.closure is None else "%.12e" % orbit.closure
    summary.write(f"period = {period}\n"
                  f"closure = {closure}\n"
                  f"energy drift = {orbit.energy_drift:.12e}\n"
                  f"samples = {len(orbit.rows)}\n"
                  f"pinch windows = {len(orbit.windows)}\n")
    return 0


def _parity_text(pl) -> str:
    if pl.b == 0:
        return str(pl.a)
    sign = "-" if pl.b < 0 else "+"
    return f"{pl.a} {sign} {abs(pl.b)}*P"


def _cmd_free(ns) -> int:
    scale = _rational(ns.l1 or "1", "--l1")
    ratio = _rational(ns.k1 or "2", "--k1")
    if scale <= 0:
        raise ConfigError(f"--l1: scale {ns.l1!r} is not positive")
    if ratio <= 0:
        raise ConfigError(f"--k1: ratio {ns.k1!r} is not positive")
    eta = free_metric(ratio, scale)
    xo, po = position_observable(ratio), momentum_observable(ratio)
    doc = {"scale": str(scale), "ratio": str(ratio),
           "eta": _parity_text(eta), "X": str(xo), "P": str(po),
           "positive": eta.is_positive()}
    try:
        doc["eta_sqrt"] = _parity_text(eta.sqrt())
    except EngineError:
        doc["eta_sqrt"] = None
    try:
        cw, sw = inner_product_weights(ratio, scale)
        doc["plane_wave_weights"] = [str(cw), str(sw)]
        lw = localized_weights(ratio, scale)
        doc["localized_weights"] = [str(lw[0]), str(lw[1])]
    except EngineError:
        doc["plane_wave_weights"] = doc["localized_weights"] = None
    if ns.format == "json":
        _emit(ns, json.dumps(doc, indent=2) + "\n")
        return 0
    lines = [f"eta = {doc['eta']}",
             f"X = {doc['X']}",
             f"P = {doc['P']}",
             f"eta positive: {'yes' if doc['positive'] else 'no'}"]
    if doc["eta_sqrt"] is not None:
        lines.append(f"eta^(1/2) = {doc['eta_sqrt']}")
    else:
        lines.append("eta^(1/2): not an exact rational square")
    if doc["plane_wave_weights"] is not None:
        lines.append("plane-wave weights: %s, %s" % tuple(doc["plane_wave_weights"]))
        lines.append("localized weights: %s, %s" % tuple(doc["localized_weights"]))
    else:
        lines.append("half-exponent weights: not exact for these values")
    _emit(ns, "\n".join(lines) + "\n")
    return 0


# -- parser / config plumbing -------------------------------------------------

def _add_param_flags(sp) -> None:
    for name in _PARAM_FLAGS:
        kind = "plain" if name[0] == "l" else "parity"
        sp.add_argument(f"--{name}", metavar="RAT",
                        help=f"order-{name[1]} {kind} amplitude"
                             " (rational or 'formal'; default formal)")


def _add_common(sp, func, fmt: bool = True) -> None:
    sp.add_argument("--config", metavar="FILE",
                    help="JSON file with defaults for this subcommand")
    sp.add_argument("--out", metavar="FILE", help="write output to FILE")
    if fmt:
        sp.add_argument("--format", choices=("text", "json"), default=None,
                        help="output format (default text)")
    sp.set_defaults(func=func)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmetric",
        description="Exact perturbative metric operators for p^2/2 + i eps x^3.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("derive", help="construct the generator series")
    sp.add_argument("--order", type=int, default=None,
                    help="perturbative order (default 3)")
    _add_param_flags(sp)
    _add_common(sp, _cmd_derive)

    sp = sub.add_parser("verify-tables", help="run the cross-check battery")
    sp.add_argument("--jobs", type=int, default=None,
                    help="worker threads (default: one per check group)")
    _add_common(sp, _cmd_verify, fmt=False)

    sp = sub.add_parser("observables", help="dressed X, P and Hermitian form")
    sp.add_argument("--order", type=int, default=None,
                    help="perturbative order (default 3)")
    _add_param_flags(sp)
    _add_common(sp, _cmd_observables)

    sp = sub.add_parser("classical", help="classical limit of the dressed form")
    sp.add_argument("--order", type=int, default=None,
                    help="perturbative order (default 2)")
    sp.add_argument("--mass", default=None, help="particle mass (rational)")
    _add_common(sp, _cmd_classical)

    sp = sub.add_parser("orbit", help="integrate closed classical orbits")
    sp.add_argument("--order", type=int, default=None, help=argparse.SUPPRESS)
    sp.add_argument("--mass", default=None, help="particle mass (rational)")
    sp.add_argument("--epsilon", type=float, default=None,
                    help="coupling strength (default 0.1)")
    sp.add_argument("--init-x", type=float, default=None,
                    help="initial position (default 0)")
    sp.add_argument("--init-p", type=float, default=None,
                    help="initial momentum (default sqrt(2 m))")
    sp.add_argument("--dt", type=float, default=None,
                    help="base time step (default 1e-3)")
    sp.add_argument("--periods", type=int, default=None,
                    help="number of periods to integrate (default 1)")
    sp.add_argument("--steps", type=int, default=None,
                    help="step budget (default 2000000)")
    _add_common(sp, _cmd_orbit, fmt=False)

    sp = sub.add_parser("free-particle", help="parity-twisted free metric")
    sp.add_argument("--l1", metavar="RAT", default=None,
                    help="metric scale e^-lambda (positive rational, default 1)")
    sp.add_argument("--k1", metavar="RAT", default=None,
                    help="parity ratio e^kappa (positive rational, default 2)")
    _add_common(sp, _cmd_free)

    return parser


_DEFAULTS = {
    "derive": {"order": 3, "format": "text"},
    "observables": {"order": 3, "format": "text"},
    "classical": {"order": 2, "mass": "1", "format": "text"},
    "orbit": {"order": 2, "mass": "1", "epsilon": 0.1, "init_x": 0.0,
              "dt": 1e-3, "periods": 1, "steps": 2_000_000},
    "free-particle": {"format": "text"},
    "verify-tables": {},
}

_TYPED = {"order": int, "periods": int, "steps": int, "jobs": int,
          "epsilon": float, "init_x": float, "init_p": float, "dt": float}


def _apply_config(ns) -> None:
    """Fill unset options from --config, then from built-in defaults."""
    if ns.config:
        try:
            with open(ns.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"--config: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("--config: top level must be a JSON object")
        for key, value in data.items():
            attr = key.replace("-", "_")
            if attr == "config" or attr == "func" or not hasattr(ns, attr):
                raise ConfigError(f"--config: unknown option {key!r} for"
                                  f" {ns.command!r}")
            if getattr(ns, attr) is None:
                if attr in _TYPED:
                    try:
                        value = _TYPED[attr](value)
                    except (TypeError, ValueError) as exc:
                        raise ConfigError(f"--config: bad value for {key!r}:"
                                          f" {value!r}") from exc
                elif not isinstance(value, str):
                    value = json.dumps(value) if not isinstance(value, (int, float)) else str(value)
                setattr(ns, attr, value)
    for key, value in _DEFAULTS.get(ns.command, {}).items():
        if getattr(ns, key, None) is None:
            setattr(ns, key, value)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        _apply_config(ns)
        if getattr(ns, "order", None) is not None and not 1 <= ns.order <= 6:
            raise ConfigError(f"--order: {ns.order} is outside 1..6")
        return ns.func(ns)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
