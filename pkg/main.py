# -*- coding: utf-8 -*-
"""
suturecalc - 命令行入口
用法: python main.py <命令> [输入文件...] [选项]
"""

import sys
from pathlib import Path

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent))

from suturecalc.app.main import main

if __name__ == "__main__":
    sys.exit(main())
