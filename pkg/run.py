#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
jackkit 启动脚本
检查依赖后转交 main.run
"""

import sys


def check_dependencies():
    """检查依赖包"""
    required_packages = [
        ('sympy', 'sympy'),
        ('numpy', 'numpy'),
        ('scipy', 'scipy'),
    ]

    missing_packages = []

    for package_name, import_name in required_packages:
        try:
            __import__(import_name)
        except ImportError:
            missing_packages.append(package_name)

    if missing_packages:
        sys.stderr.write("缺少以下依赖包:\n")
        for package in missing_packages:
            sys.stderr.write(f"  - {package}\n")
        sys.stderr.write("\n请运行以下命令安装依赖:\npip install -r requirements.txt\n")
        return False

    return True


def main():
    """主函数"""
    if not check_dependencies():
        sys.exit(1)

    from main import run
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
