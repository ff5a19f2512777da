# -*- coding: utf-8 -*-
"""
命令行应用
"""
