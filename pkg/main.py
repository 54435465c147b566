#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
jackkit 命令行
Jack / 移位 Jack 多项式的精确计算、恒等式套件与沿 VK 序列的收敛实验
"""

import argparse
import csv
import hashlib
import inspect
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from jackkit import __version__
from jackkit.binomial import binomial_check, binomial_expand
from jackkit.engine_config import ensure_config_file, get_cache_dir, get_limit, set_config_file
from jackkit.errors import DeskScaleError, JackkitError, ParseError
from jackkit.experiments import ExperimentConfig, convergence_experiment, csv_text, summary
from jackkit.identities import SUITES, run_suite
from jackkit.jack_engine import JackEngine
from jackkit.links import float_one_point_measure, link_weights, one_point_measure, project_delta
from jackkit.measures import second_moment
from jackkit.partitions import (
    as_partition,
    as_signature,
    as_theta,
    format_parts,
    format_rational,
    pad,
    parse_parts,
)
from jackkit.shifted_jack import ShiftedJackEngine
from jackkit.symfun import SymFun

logger = logging.getLogger("jackkit.cli")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SUITE_FAILURE = 2


@dataclass
class Output:
    """一次命令的输出：JSON 数据、可读文本、CSV 行"""
    data: Any
    pretty: Optional[str] = None
    rows: List[List[Any]] = field(default_factory=list)
    header: List[str] = field(default_factory=list)
    text_csv: Optional[str] = None
    exit_code: int = EXIT_OK


class CliParser(argparse.ArgumentParser):
    """参数错误按校验错误处理（退出码 1）"""

    def error(self, message):
        raise ParseError(message)


# ---------------------------------------------------------------------------
# 桌面规模检查
# ---------------------------------------------------------------------------

def check_desk_scale(parts: Sequence[int], n: int, allow_large: bool) -> None:
    """
    精确路径的规模限制

    Raises:
        DeskScaleError: |λ_i| 或 n 超过限制且未指定 --allow-large
    """
    if allow_large:
        return
    max_part = get_limit("max_part")
    max_variables = get_limit("max_variables")
    if parts and max(abs(p) for p in parts) > max_part:
        raise DeskScaleError(f"|λ_i| ≤ {max_part} 的限制被违反: {format_parts(parts)}（可用 --allow-large 放宽）")
    if n > max_variables:
        raise DeskScaleError(f"n ≤ {max_variables} 的限制被违反: n = {n}（可用 --allow-large 放宽）")


def _signature_arg(args, name: str = "lam") -> tuple:
    parts = parse_parts(getattr(args, name))
    n = getattr(args, "n", None)
    if n is None:
        n = len(parts)
    elif n < 1:
        raise JackkitError(f"n 必须 ≥ 1，收到 {n}")
    if len(parts) > n:
        raise JackkitError(f"{format_parts(parts)} 的长度超过 n = {n}")
    lam = as_signature(tuple(parts) + (0,) * (n - len(parts)))
    check_desk_scale(lam, n, args.allow_large)
    return lam


# ---------------------------------------------------------------------------
# 缓存
# ---------------------------------------------------------------------------

def _cache_path(lam: Sequence[int], theta) -> Optional[str]:
    cache_dir = get_cache_dir()
    if not cache_dir:
        return None
    key = hashlib.sha256(f"{format_parts(lam)}|{format_rational(theta)}".encode("utf-8")).hexdigest()[:32]
    return os.path.join(cache_dir, f"jack_{key}.json")


def cached_jack(lam: Sequence[int], theta, oracle: bool = False) -> SymFun:
    """P_λ，设置 JACKKIT_CACHE_DIR 时读写磁盘缓存（预言机结果不缓存）"""
    engine = JackEngine(theta)
    if oracle:
        return engine.gram_schmidt_oracle(as_partition(lam), len(lam))
    path = _cache_path(lam, theta)
    if path and os.path.exists(path):
        try:
            with open(path, 'r', encoding='utf-8') as f:
                logger.debug("缓存命中: %s", path)
                return SymFun.from_json(json.load(f))
        except (OSError, ValueError) as e:
            logger.warning("缓存读取失败，重新计算: %s", e)
    result = engine.jack_P(lam)
    if path:
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(result.to_json(), f, ensure_ascii=False)
        except OSError as e:
            logger.warning("缓存写入失败: %s", e)
    return result


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------

def cmd_jack(args) -> Output:
    lam = _signature_arg(args)
    poly = cached_jack(lam, args.theta, oracle=args.oracle)
    rows = [[format_parts(k), format_rational(poly.terms[k])] for k in poly.keys()]
    return Output(poly.to_json(), pretty=poly.pretty(), rows=rows, header=["exp", "coef"])


def cmd_pstar(args) -> Output:
    mu = as_partition(parse_parts(args.mu))
    n = max(len(mu), 1) if args.n is None else args.n
    if n < 1:
        raise JackkitError(f"n 必须 ≥ 1，收到 {n}")
    check_desk_scale(mu, n, args.allow_large)
    engine = ShiftedJackEngine(args.theta)
    if args.at:
        point = parse_parts(args.at)
        value = engine.pstar_eval(mu, pad(point, n) if len(point) < n else point)
        data = {"mu": list(mu), "point": list(point), "value": format_rational(value)}
        return Output(data, pretty=format_rational(value), rows=[[format_parts(point), data["value"]]],
                      header=["point", "value"])
    poly = engine.interpolation_oracle(mu, n) if args.oracle else engine.pstar(mu, n)
    data = poly.to_json()
    rows = [[format_parts(t["exp"]), t["coef"]] for t in data["terms"]]
    return Output(data, pretty=str(poly.poly.as_expr()), rows=rows, header=["exp", "coef"])


def cmd_psi(args) -> Output:
    lam = as_signature(parse_parts(args.lam))
    mu = as_signature(parse_parts(args.mu))
    check_desk_scale(lam, len(lam), args.allow_large)
    value = JackEngine(args.theta).psi(lam, mu)
    data = {"lambda": list(lam), "mu": list(mu), "psi": format_rational(value)}
    return Output(data, pretty=format_rational(value), rows=[[data["psi"]]], header=["psi"])


def cmd_binomial(args) -> Output:
    lam = _signature_arg(args)
    k = args.k if args.k is not None else len(lam)
    if args.check:
        result = binomial_check(lam, k, args.theta, args.degree)
        return Output(result, pretty=result["message"],
                      exit_code=EXIT_OK if result["success"] else EXIT_SUITE_FAILURE)
    degree = args.degree if args.degree is not None else max(sum(p for p in lam if p > 0), 0)
    coefficients = binomial_expand(lam, k, args.theta, degree)
    items = [{"mu": list(mu), "coef": format_rational(c)} for mu, c in coefficients.items()]
    data = {"lambda": list(lam), "k": k, "degree": degree, "coefficients": items}
    pretty = "\n".join(f"{format_parts(i['mu'])}: {i['coef']}" for i in items)
    return Output(data, pretty=pretty, rows=[[format_parts(i["mu"]), i["coef"]] for i in items],
                  header=["mu", "coef"])


def cmd_identities(args) -> Output:
    suite = SUITES[args.suite]
    accepted = inspect.signature(suite).parameters
    params = {}
    for name in ("n", "m", "degree", "max_weight", "n_max", "bound", "K"):
        value = getattr(args, name, None)
        if value is not None:
            if name not in accepted:
                raise JackkitError(f"套件 {args.suite} 不接受参数 --{name.replace('_', '-')}")
            params[name] = value
    for name in ("n", "m", "n_max"):
        if name in params:
            check_desk_scale((), params[name], args.allow_large)
    result = run_suite(args.suite, args.theta, **params)
    return Output(result, pretty=result["message"],
                  rows=[[result["suite"], result["success"], result.get("checked", 0)]],
                  header=["suite", "success", "checked"],
                  exit_code=EXIT_OK if result["success"] else EXIT_SUITE_FAILURE)


def cmd_converge(args) -> Output:
    config = ExperimentConfig.load(args.config)
    config.allow_large = args.allow_large
    if args.workers:
        config.workers = args.workers
    rows = convergence_experiment(config)
    data = summary(config, rows)
    if args.summary:
        with open(args.summary, 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write("\n")
    pretty = "\n".join(f"n = {r.n}: sup 误差 {r.sup_error:.3e}" for r in rows)
    return Output(data, pretty=pretty, text_csv=csv_text(config, rows))


def cmd_links(args) -> Output:
    lam = _signature_arg(args)
    if args.k is not None:
        projection = project_delta(lam, args.k, args.theta)
        items = [{"nu": list(nu), "weight": format_rational(w)} for nu, w in projection.items()]
        data = {"lambda": list(lam), "k": args.k, "projection": items}
        rows = [[format_parts(i["nu"]), i["weight"]] for i in items]
        return Output(data, pretty="\n".join(f"{r[0]}: {r[1]}" for r in rows), rows=rows, header=["nu", "weight"])
    row = link_weights(lam, args.theta)
    data = row.to_dict()
    rows = [[format_parts(c["mu"]), c["weight"]] for c in data["children"]]
    return Output(data, pretty="\n".join(f"{r[0]}: {r[1]}" for r in rows), rows=rows, header=["mu", "weight"])


def cmd_measure(args) -> Output:
    if args.float:
        lam = as_signature(parse_parts(args.lam))
        measure = float_one_point_measure(lam, as_theta(args.theta))
        data = {"lambda_length": len(lam), "measure": measure.to_dict(), "second_moment": measure.moment(2)}
    else:
        lam = _signature_arg(args)
        measure = one_point_measure(lam, args.theta)
        data = {"lambda": list(lam), "measure": measure.to_dict(),
                "second_moment": format_rational(second_moment(lam, as_theta(args.theta)))}
    masses = data["measure"]["masses"]
    rows = [[x, m] for x, m in zip(data["measure"]["support"], masses)]
    return Output(data, pretty="\n".join(f"{x}: {m}" for x, m in rows), rows=rows, header=["xi", "mass"])


COMMANDS = {
    "jack": cmd_jack,
    "pstar": cmd_pstar,
    "psi": cmd_psi,
    "binomial": cmd_binomial,
    "identities": cmd_identities,
    "converge": cmd_converge,
    "links": cmd_links,
    "measure": cmd_measure,
}


# ---------------------------------------------------------------------------
# 参数解析与输出
# ---------------------------------------------------------------------------

def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json", help="输出格式")
    common.add_argument("--theta", default="1", help="θ，正有理数 p/q")
    common.add_argument("--allow-large", action="store_true", help="放宽桌面规模限制")
    common.add_argument("--verbose", action="store_true", help="输出调试日志到 stderr")
    common.add_argument("--engine-config", dest="engine_config", help="引擎配置文件路径（默认 engine_config.json）")

    parser = CliParser(prog="jackkit", description="Jack 多项式与 VK 序列渐近的精确计算工具")
    parser.add_argument("--version", action="version", version=f"jackkit {__version__}")
    sub = parser.add_subparsers(dest="verb", parser_class=CliParser)
    sub.required = True

    p = sub.add_parser("jack", parents=[common], help="计算 P_λ(x_1..x_n; θ)")
    p.add_argument("--lambda", dest="lam", required=True, help="标号，如 [2,1]")
    p.add_argument("--n", type=int, help="变量个数，默认 λ 的长度")
    p.add_argument("--oracle", action="store_true", help="用 Gram–Schmidt 预言机计算")

    p = sub.add_parser("pstar", parents=[common], help="计算移位 Jack 多项式 P*_μ")
    p.add_argument("--mu", required=True, help="分拆，如 [1,1]")
    p.add_argument("--n", type=int, help="变量个数")
    p.add_argument("--at", help="只在该点求值")
    p.add_argument("--oracle", action="store_true", help="用插值预言机计算")

    p = sub.add_parser("psi", parents=[common], help="分支系数 ψ_{λ/μ}")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)

    p = sub.add_parser("binomial", parents=[common], help="二项式系数 Q*_μ(λ)/(nθ)_μ")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, help="活动变量个数，默认 n")
    p.add_argument("--degree", type=int, help="|μ| 上界")
    p.add_argument("--check", action="store_true", help="重建 Φ_λ 并校验")

    p = sub.add_parser("identities", parents=[common], help="运行恒等式套件")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    for name in ("n", "m", "degree", "max-weight", "n-max", "bound"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--K", type=int, help="级数截断阶")

    p = sub.add_parser("converge", parents=[common], help="沿 VK 序列的收敛实验")
    p.add_argument("--config", required=True, help="实验配置 JSON")
    p.add_argument("--summary", help="另外写出 JSON 摘要的路径")
    p.add_argument("--workers", type=int, help="并行进程数")

    p = sub.add_parser("links", parents=[common], help="链接系数与投影")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, help="投影到长度 k")

    p = sub.add_parser("measure", parents=[common], help="一点测度 M_n")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--float", action="store_true", help="大 n 的浮点路径")
    return parser


def _render(output: Output, fmt: str) -> str:
    if fmt == "pretty" and output.pretty is not None:
        return output.pretty + "\n"
    if fmt == "csv":
        if output.text_csv is not None:
            return output.text_csv
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(output.header)
        writer.writerows(output.rows)
        return buffer.getvalue()
    return json.dumps(output.data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """
    命令行入口

    Args:
        argv: 参数列表，默认 sys.argv[1:]
        stdout: 输出流，默认 sys.stdout

    Returns:
        int: 退出码，0 成功，1 校验错误，2 恒等式失败
    """
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.verbose)
        if args.engine_config:
            set_config_file(args.engine_config)
        ensure_config_file()
        output = COMMANDS[args.verb](args)
    except JackkitError as e:
        sys.stderr.write(f"错误: {e}\n")
        return EXIT_VALIDATION
    fmt = args.format
    if output.exit_code == EXIT_SUITE_FAILURE and fmt != "json":
        # 反例总是以 JSON 输出
        fmt = "json"
    stdout.write(_render(output, fmt))
    return output.exit_code


def main():
    """主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
