"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (a JSON failure record
is printed), 2 on usage errors, malformed inputs or cap violations.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .certificates import Certificate, barrier_set, build_gP, ck_states, verify_certificate
from .fourier import fourier_coeffs, sok_to_function
from .harness import family_certificates, lower_bound_estimate, savitch_size_table, verify_barrier
from .knowledge import CKLabeling, build_savitch_network, validate_certain_knowledge
from .network import CapExceeded, SwitchingNetwork, canonical_states, export_dot, verify_solves

COMMANDS = ("build-savitch", "verify-network", "states", "analyze-fourier", "make-certificate",
            "check-certificate", "barrier-check", "bound", "size-table", "export-dot")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    max_n: int = 5
    max_k: int = 3
    output: Optional[str] = None
    fmt: str = "json"
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.max_n <= 0 or self.max_k < 0:
            raise UsageError("caps must be positive")

    def meta(self) -> dict:
        return {"command": self.command, "seed": self.seed}


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")


def _load_net(path: str) -> SwitchingNetwork:
    data = _load_json(path)
    try:
        return SwitchingNetwork.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed network file {path}: {exc}")


def _labels_for(net_path: str, net: SwitchingNetwork) -> Optional[CKLabeling]:
    data = _load_json(net_path)
    if "labels" in data:
        return CKLabeling.from_json(net.n, data["labels"])
    return None


def _emit(cfg: RunConfig, payload, text: Optional[str] = None):
    if text is None:
        if isinstance(payload, dict):
            payload = dict(payload, meta=cfg.meta())
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    a = cfg.args
    cmd = cfg.command
    if cmd == "build-savitch":
        if a["n"] > cfg.max_n:
            raise CapExceeded(f"n={a['n']} exceeds --max-n {cfg.max_n}")
        net, lab = build_savitch_network(a["n"], cap=cfg.max_n)
        _emit(cfg, dict(net.to_json(), labels=lab.to_json()))
        return 0
    if cmd == "verify-network":
        net = _load_net(a["network"])
        report = verify_solves(net, mode=a.get("mode", "exhaustive"), max_n=cfg.max_n)
        out = report.to_json()
        lab = _labels_for(a["network"], net)
        if lab is not None:
            out["certain_knowledge"] = validate_certain_knowledge(net, lab)
        _emit(cfg, out)
        return 0 if report.solves and out.get("certain_knowledge", True) else 1
    if cmd == "states":
        net = _load_net(a["network"])
        states = canonical_states(net)
        _emit(cfg, {"n": net.n, "states": [{"vertex": v, "members": j.to_json()} for v, j in states.items()]})
        return 0
    if cmd == "analyze-fourier":
        net = _load_net(a["network"])
        states = canonical_states(net)
        chosen = a.get("vertex")
        rows = []
        for v, j in states.items():
            if chosen is not None and v != chosen:
                continue
            spec = fourier_coeffs(sok_to_function(j))
            rows.append({"vertex": v, "spectrum": spec.to_json()})
        if chosen is not None and not rows:
            raise UsageError(f"vertex {chosen} is not reachable from s'")
        _emit(cfg, {"n": net.n, "vertices": rows})
        return 0
    if cmd == "make-certificate":
        cert = build_gP(a["k"], max_k=cfg.max_k)
        _emit(cfg, cert.to_json())
        return 0
    if cmd == "check-certificate":
        try:
            cert = Certificate.from_json(_load_json(a["certificate"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed certificate: {exc}")
        nets = []
        for path in a.get("against") or []:
            net = _load_net(path)
            if net.n < cert.n:
                raise UsageError(f"network {path} has n={net.n}, smaller than the certificate's n={cert.n}")
            lab = _labels_for(path, net)
            states = ck_states(lab) if lab is not None else canonical_states(net)
            nets.append((net, states))
        rep = verify_certificate(cert, nets, seed=cfg.seed)
        _emit(cfg, rep.to_json())
        return 0 if rep.ok else 1
    if cmd == "barrier-check":
        k = a["k"]
        w = [] if a.get("empty") else barrier_set(k, a.get("cap"))
        ok = verify_barrier(k, w, max_k=min(cfg.max_k, 2))
        _emit(cfg, {"k": k, "barrier_size": len(w), "valid": ok})
        return 0 if ok else 1
    if cmd == "bound":
        if a["k"] > cfg.max_k:
            raise CapExceeded(f"k={a['k']} exceeds --max-k {cfg.max_k}")
        fam, certs = family_certificates(a["p"], a["k"])
        nets = []
        for path in a.get("net") or []:
            net = _load_net(path)
            lab = _labels_for(path, net)
            nets.append((Path(path).name, net, ck_states(lab) if lab is not None else canonical_states(net)))
        rep = lower_bound_estimate(certs, nets, family=f"poly-p{a['p']}-k{a['k']}")
        if cfg.fmt == "csv":
            _emit(cfg, None, rep.to_csv({"seed": cfg.seed}))
        else:
            _emit(cfg, rep.to_json())
        return 0
    if cmd == "size-table":
        if a["k_max"] > cfg.max_k:
            raise CapExceeded(f"k_max={a['k_max']} exceeds --max-k {cfg.max_k}")
        rows = savitch_size_table(a["k_max"], cap=cfg.max_k)
        if cfg.fmt == "csv":
            text = "k,N,vertices,ceiling,ok,seed\n" + "".join(
                f"{r.k},{r.N},{r.vertices},{r.ceiling},{int(r.ok)},{cfg.seed}\n" for r in rows)
            _emit(cfg, None, text)
        else:
            _emit(cfg, {"rows": [{"k": r.k, "N": r.N, "vertices": r.vertices, "ceiling": r.ceiling,
                                  "ok": r.ok} for r in rows]})
        return 0 if all(r.ok for r in rows) else 1
    if cmd == "export-dot":
        net = _load_net(a["network"])
        _emit(cfg, None, export_dot(net, comment=f"swnet export-dot seed={cfg.seed}"))
        return 0
    raise UsageError(f"unknown command {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-n", type=int, default=5, help="cap for exhaustive verification")
    common.add_argument("--max-k", type=int, default=3, help="cap for certificate pipelines")
    common.add_argument("-o", "--output", default=None)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "dot"), default="json")

    p = argparse.ArgumentParser(prog="swnet", description="monotone switching network laboratory")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("build-savitch", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("verify-network", parents=[common])
    s.add_argument("network")
    s.add_argument("--mode", choices=("exhaustive", "monotone"), default="exhaustive",
                   help="monotone: check only simple paths and cut complements")
    s = sub.add_parser("states", parents=[common])
    s.add_argument("network")
    s = sub.add_parser("analyze-fourier", parents=[common])
    s.add_argument("network")
    s.add_argument("--vertex", type=int, default=None)
    s = sub.add_parser("make-certificate", parents=[common])
    s.add_argument("--k", type=int, required=True)
    s = sub.add_parser("check-certificate", parents=[common])
    s.add_argument("certificate")
    s.add_argument("--against", action="append")
    s = sub.add_parser("barrier-check", parents=[common])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--empty", action="store_true", help="check the empty set instead")
    s = sub.add_parser("bound", parents=[common])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--net", action="append")
    s = sub.add_parser("size-table", parents=[common])
    s.add_argument("--k-max", type=int, default=2)
    s = sub.add_parser("export-dot", parents=[common])
    s.add_argument("network")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    args = {k: v for k, v in vars(ns).items()
            if k not in ("command", "seed", "max_n", "max_k", "output", "fmt")}
    try:
        cfg = RunConfig(ns.command, ns.seed, ns.max_n, ns.max_k, ns.output, ns.fmt, args)
        return run(cfg)
    except (UsageError, CapExceeded) as exc:
        print(f"swnet: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"swnet: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
