# -*- coding: utf-8 -*-
"""
命令行入口
读取输入文档、执行检查并输出 JSON 报告
退出码：0 全部通过，1 有检查失败，2 输入无法解析
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# 确保可以导入 suturecalc 包
project_dir = Path(__file__).parent.parent.parent
if str(project_dir) not in sys.path:
    sys.path.insert(0, str(project_dir))

from loguru import logger
from pydantic import ValidationError

from suturecalc.app.commands import COMMANDS, HELP
from suturecalc.app.core.log import setup_logging
from suturecalc.app.schemas import JobOptions, JobSpec, Report
from suturecalc.config import Settings, get_settings
from suturecalc.errors import DocumentError


def build_parser(cfg: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="输出可读摘要而不是 JSON")
    common.add_argument("--seed", type=int, default=None, help=f"随机种子（默认 {cfg.runner.seed}）")
    common.add_argument("--cases", type=int, default=None, help=f"随机用例数（默认 {cfg.runner.cases}）")
    common.add_argument("--cutoff", default=None, help=f"截断指数，如 7 或 15/2（默认 {cfg.novikov.cutoff}）")
    common.add_argument("--unit-group", dest="unit_group", default=None, help="Trivial / Signs / FullUnits")
    common.add_argument("--ring", default=None, help="目标环，如 RationalField / NovikovOverIntegers")
    common.add_argument("--output", "--out", dest="output", default=None, help="报告输出文件")
    common.add_argument("--workers", type=int, default=None, help="并行进程数，1 为顺序执行")

    parser = argparse.ArgumentParser(prog="suturecalc", description=f"{cfg.app_name} 批量检查工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {cfg.app_version}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name, parents=[common], help=HELP[name])
        sub.add_argument("inputs", nargs="*", help="输入文档（JSON）")
        if name == "ring-eval":
            sub.add_argument("--expr", action="append", dest="expressions", default=[], help="行内表达式，可重复")
    return parser


def make_job(args: argparse.Namespace, cfg: Settings) -> JobSpec:
    """命令行参数与配置默认值合成任务，校验失败抛出 ValidationError"""
    options = {
        "cutoff": args.cutoff if args.cutoff is not None else cfg.novikov.cutoff,
        "seed": args.seed if args.seed is not None else cfg.runner.seed,
        "cases": args.cases if args.cases is not None else cfg.runner.cases,
        "workers": args.workers if args.workers is not None else cfg.runner.max_workers,
        "unit_group": args.unit_group,
        "ring": args.ring,
        "output": args.output,
        "text": args.text,
    }
    return JobSpec.model_validate({
        "command": args.command,
        "inputs": args.inputs,
        "expressions": getattr(args, "expressions", []),
        "options": options,
    })


def run(job: JobSpec) -> Report:
    """执行任务；文档错误转成 status=error 的报告"""
    logger.info(f"执行 {job.command}: {len(job.inputs)} 个输入文件")
    try:
        report = COMMANDS[job.command](job)
    except DocumentError as exc:
        logger.error(f"输入解析失败: {exc.message} @ {exc.location}")
        return Report.from_error(job.command, exc.to_dict())
    logger.info(f"{job.command} 完成: {report.status}, {len(report.checks)} 项检查")
    return report


def emit(report: Report, options: JobOptions) -> None:
    payload = report.to_json()
    if options.output:
        output = Path(options.output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(payload + "\n", encoding="utf-8")
    if options.text:
        print(report.to_text())
    elif not options.output:
        print(payload)


def main(argv: Optional[List[str]] = None) -> int:
    cfg = get_settings()
    args = build_parser(cfg).parse_args(argv)
    setup_logging(cfg.logging)
    try:
        job = make_job(args, cfg)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<job>"
        error = DocumentError(first["msg"], location)
        report = Report.from_error(args.command, error.to_dict())
        print(report.to_json())
        return report.exit_code
    report = run(job)
    emit(report, job.options)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
