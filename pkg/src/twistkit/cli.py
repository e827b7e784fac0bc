"""Thin-client CLI: every subcommand is a request against the service.

By default requests run against the app in-process (no server needed);
``--url`` points them at a remote instance instead.  All numeric output is
exact (integers and fractions, never floats), identical invocations print
identical bytes, and ``--json`` emits the raw response canonically.

Exit codes: 0 success, 1 usage or input error, 2 verification anomaly.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO

from .errors import TwistkitError, VerificationAnomaly
from .formats import read_eigenvalue_jsonl

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ANOMALY = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Client:
    """Minimal POST client over HTTP or the in-process ASGI app."""

    def __init__(self, url: str | None = None):
        if url:
            import httpx

            self._client = httpx.Client(base_url=url, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        resp = self._client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            body = {"detail": resp.text}
        return resp.status_code, body

    def close(self):
        self._client.close()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _table_payload(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        table = read_eigenvalue_jsonl(fh)
    return {
        "label": table.label,
        "level_hint": table.level_hint,
        "weight": table.weight,
        "entries": [{"p": p, "ap": str(table.entries[p])} for p in table.primes],
    }


def _write_table_jsonl(body: dict, fh: IO[str]) -> None:
    header = {"label": body["label"], "level_hint": body["level_hint"], "weight": body["weight"]}
    fh.write(json.dumps(header, sort_keys=True) + "\n")
    for entry in body["entries"]:
        fh.write(json.dumps({"ap": entry["ap"], "p": entry["p"]}, sort_keys=True) + "\n")


def _emit_json(body: dict) -> None:
    print(json.dumps(body, sort_keys=True, indent=2))


def _fail(status: int, body: dict) -> int:
    detail = body.get("detail", body)
    print(f"error: {detail}", file=sys.stderr)
    return EXIT_ANOMALY if status == 409 else EXIT_USAGE


def _density_lines(report: dict, prefix: str = "") -> list[str]:
    return [
        f"{prefix}count = {report['count']}",
        f"{prefix}total = {report['total']}",
        f"{prefix}empirical = {report['empirical']}",
        f"{prefix}running_sup = {report['running_sup']}",
    ]


# -- subcommand handlers ------------------------------------------------------


def _cmd_bound(client: Client, args) -> int:
    status, body = client.post(
        "/bound", {"n": args.n, "ell": args.ell, "degree": args.degree}
    )
    if status != 200:
        return _fail(status, body)
    if args.json:
        _emit_json(body)
    else:
        lines = [
            f"degree_bound = {body['degree_bound']}",
            f"m0 = {body['m0']}",
            f"witness: f = {body['witness_f']}, a = {body['witness_a']}",
            f"sharp = {body['sharp_exponent']}",
        ]
        if body["paper_exponent"] is not None:
            lines.append(
                f"paper = {body['m0']}! = {body['paper_exponent']}"
                f" ({body['paper_exponent_digits']} digits)"
            )
        else:
            lines.append(f"paper = {body['m0']}! (not materialized; m0 exceeds cap)")
        print("\n".join(lines))
    if args.candidates:
        status, cand = client.post("/localfield/candidates", {"n": args.n})
        if status != 200:
            return _fail(status, cand)
        if args.json:
            _emit_json(cand)
        else:
            print("candidates = {" + ", ".join(str(w) for w in cand["exponents"]) + "}")
            print(f"candidates_lcm = {cand['lcm']}")
    return EXIT_OK


def _cmd_ap(client: Client, args) -> int:
    try:
        a_str, b_str = args.curve.split(",")
        a, b = int(a_str), int(b_str)
    except ValueError:
        print(f"error: --curve expects 'a,b' integers, got {args.curve!r}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"a": a, "b": b, "max_prime": args.max_prime, "threads": args.threads}
    if args.label:
        payload["label"] = args.label
    status, body = client.post("/ap", payload)
    if status != 200:
        return _fail(status, body)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_table_jsonl(body, fh)
        print(f"wrote {len(body['entries'])} primes to {args.out}")
    elif args.json:
        _emit_json(body)
    else:
        _write_table_jsonl(body, sys.stdout)
    return EXIT_OK


def _cmd_locus(client: Client, args) -> int:
    payload = {
        "f": _table_payload(args.f),
        "g": _table_payload(args.g),
        "check_hasse": not args.no_hasse_check,
    }
    status, body = client.post("/locus", payload)
    if status != 200:
        return _fail(status, body)
    if args.json:
        _emit_json(body)
    else:
        by_exp: dict[int, int] = {}
        for _, n_p in body["exponents"]:
            by_exp[n_p] = by_exp.get(n_p, 0) + 1
        print("\n".join(_density_lines(body["density"])))
        for n_p in sorted(by_exp):
            print(f"exponent {n_p}: {by_exp[n_p]} primes")
    return EXIT_OK


def _cmd_twist(client: Client, args) -> int:
    payload = {
        "f": _table_payload(args.f),
        "g": _table_payload(args.g),
        "max_conductor": args.max_conductor,
        "check_hasse": not args.no_hasse_check,
        "assume_non_cm": not args.no_assume_non_cm,
    }
    status, body = client.post("/twist", payload)
    if status != 200:
        return _fail(status, body)
    if args.json:
        _emit_json(body)
    else:
        print(f"locus_density = {body['locus']['density']['empirical']}")
        print(f"primes_checked = {body['primes_checked']}")
        print(f"search_bound = {body['search_bound']}")
        print(f"matches = {len(body['matches'])}")
        for match in body["matches"]:
            exps = ",".join(str(e) for e in match["exponents"])
            print(
                f"match: conductor {match['conductor']}, modulus {match['modulus']},"
                f" order {match['order']}, exponents [{exps}]"
            )
        print(f"anomaly = {'true' if body['anomaly'] else 'false'}")
    return EXIT_ANOMALY if body.get("anomaly") else EXIT_OK


def _cmd_density(client: Client, args) -> int:
    chosen = [x is not None for x in (args.threshold, args.lift, args.empirical)]
    if sum(chosen) != 1:
        print("error: pick exactly one of --threshold / --lift / --empirical", file=sys.stderr)
        return EXIT_USAGE
    if args.threshold is not None:
        status, body = client.post(
            "/density/threshold", {"c1": args.threshold[0], "c2": args.threshold[1]}
        )
        if status != 200:
            return _fail(status, body)
        _emit_json(body) if args.json else print(body["value"])
        return EXIT_OK
    if args.lift is not None:
        try:
            d = int(args.lift[1])
        except ValueError:
            print(f"error: --lift degree must be an integer, got {args.lift[1]!r}", file=sys.stderr)
            return EXIT_USAGE
        status, body = client.post("/density/lift", {"delta": args.lift[0], "d": d})
        if status != 200:
            return _fail(status, body)
        _emit_json(body) if args.json else print(body["value"])
        return EXIT_OK
    if not args.checkpoints:
        print("error: --empirical needs --checkpoints", file=sys.stderr)
        return EXIT_USAGE
    try:
        checkpoints = [int(tok) for tok in args.checkpoints.split(",")]
    except ValueError:
        print(f"error: bad --checkpoints {args.checkpoints!r}", file=sys.stderr)
        return EXIT_USAGE
    members = []
    for line in _read_text(args.empirical).splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            members.append(int(line))
        except ValueError:
            print(f"error: bad prime line {line!r}", file=sys.stderr)
            return EXIT_USAGE
    payload = {"members": members, "cutoff": checkpoints[-1], "checkpoints": checkpoints}
    status, body = client.post("/density/empirical", payload)
    if status != 200:
        return _fail(status, body)
    if args.json:
        _emit_json(body)
    else:
        print("\n".join(_density_lines(body)))
        for pos, count, total in body["checkpoints"]:
            print(f"checkpoint {pos}: {count}/{total}")
    return EXIT_OK


def _cmd_cheb(client: Client, args) -> int:
    payload = {"group_text": _read_text(args.group), "xset": args.xset, "seed": args.seed}
    if args.sample is not None:
        payload["trials"] = args.sample
    status, body = client.post("/cheb", payload)
    if status != 200:
        return _fail(status, body)
    if args.json:
        _emit_json(body)
    else:
        print(f"group_order = {body['group_order']}")
        print(f"normal_order = {body['normal_order']}")
        print(f"components = {body['components']}")
        print(f"density = {body['density']}")
        print(f"component = {body['component'] if body['component'] is not None else 'none'}")
        print(f"coset_union = {'true' if body['is_coset_union'] else 'false'}")
        if body["sample"] is not None:
            rep = body["sample"]
            print(f"sampled = {rep['count']}/{rep['total']} (seed {args.seed})")
            print(f"sampled_fraction = {rep['empirical']}")
    return EXIT_OK


def _weights_rows(path: str) -> list[list[int]]:
    from .formats import parse_weights_text

    return [list(w) for w in parse_weights_text(_read_text(path)).weights]


def _cmd_weights(client: Client, args) -> int:
    if args.weights_cmd == "expand":
        payload = {"weights": _weights_rows(args.input), "k": args.k, "kind": args.kind}
        status, body = client.post("/weights/expand", payload)
    elif args.weights_cmd == "recover":
        payload = {"weights": _weights_rows(args.input), "k": args.k, "n": args.n}
        status, body = client.post("/weights/recover", payload)
    else:
        payload = {
            "w1": _weights_rows(args.w1),
            "w2": _weights_rows(args.w2),
            "m": args.m,
            "conclude": args.conclude,
        }
        status, body = client.post("/weights/power-check", payload)
    if status != 200:
        return _fail(status, body)
    if args.json:
        _emit_json(body)
    elif args.weights_cmd in ("expand", "recover"):
        text = "\n".join(",".join(str(x) for x in row) for row in body["weights"])
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
            print(f"wrote {len(body['weights'])} weights to {args.out}")
        else:
            print(text)
    else:
        print(f"equal = {'true' if body['equal'] else 'false'}")
        if body["multisets_equal"] is not None:
            print(f"multisets_equal = {'true' if body['multisets_equal'] else 'false'}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("twistkit.service:app", host=args.host, port=args.port)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> _Parser:
    # SUPPRESS keeps a subparser from clobbering a flag given before the subcommand
    common = _Parser(add_help=False)
    common.add_argument(
        "--url", default=argparse.SUPPRESS, help="base URL of a running service (default: in-process)"
    )
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="print the raw JSON response"
    )

    parser = _Parser(prog="twistkit", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", parents=[common], help="root-of-unity and exponent bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--candidates", action="store_true", help="also print the global exponent candidates")

    p = sub.add_parser("ap", parents=[common], help="generate an eigenvalue table from a curve")
    p.add_argument("--curve", required=True, metavar="a,b")
    p.add_argument("--max-prime", type=int, required=True)
    p.add_argument("--label")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="write JSONL here instead of stdout")

    p = sub.add_parser("locus", parents=[common], help="power-equality locus of two tables")
    p.add_argument("f", help="first eigenvalue JSONL file")
    p.add_argument("g", help="second eigenvalue JSONL file")
    p.add_argument("--no-hasse-check", action="store_true")

    p = sub.add_parser("twist", parents=[common], help="locus plus twist-character search")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--max-conductor", type=int, required=True)
    p.add_argument("--no-hasse-check", action="store_true")
    p.add_argument("--no-assume-non-cm", action="store_true")

    p = sub.add_parser("density", parents=[common], help="threshold / lift / empirical densities")
    p.add_argument("--threshold", nargs=2, type=int, metavar=("C1", "C2"))
    p.add_argument("--lift", nargs=2, metavar=("DELTA", "D"))
    p.add_argument("--empirical", metavar="FILE", help="file with one prime per line")
    p.add_argument("--checkpoints", metavar="LIST", help="comma-separated, last = cutoff")

    p = sub.add_parser("cheb", parents=[common], help="component-group densities")
    p.add_argument("--group", required=True, metavar="FILE")
    p.add_argument("--xset", default="all", help="all | none | class:<cycles> | coset:<cycles>, '+' unions")
    p.add_argument("--sample", type=int, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("weights", parents=[common], help="expand / recover / power-check")
    wsub = p.add_subparsers(dest="weights_cmd", required=True, parser_class=_Parser)
    w = wsub.add_parser("expand", parents=[common])
    w.add_argument("input", help="weights file ('-' for stdin)")
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--kind", choices=["tensor", "symmetric"], required=True)
    w.add_argument("--out")
    w = wsub.add_parser("recover", parents=[common])
    w.add_argument("input")
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--out")
    w = wsub.add_parser("power-check", parents=[common])
    w.add_argument("w1")
    w.add_argument("w2")
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--conclude", action="store_true", help="also assert the equal-multiset conclusion")

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


_HANDLERS = {
    "bound": _cmd_bound,
    "ap": _cmd_ap,
    "locus": _cmd_locus,
    "twist": _cmd_twist,
    "density": _cmd_density,
    "cheb": _cmd_cheb,
    "weights": _cmd_weights,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.url = getattr(args, "url", None)
    args.json = getattr(args, "json", False)
    if args.command == "serve":
        return _cmd_serve(args)
    import httpx

    client = Client(args.url)
    try:
        return _HANDLERS[args.command](client, args)
    except TwistkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANOMALY if isinstance(exc, VerificationAnomaly) else EXIT_USAGE
    except (OSError, httpx.HTTPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
