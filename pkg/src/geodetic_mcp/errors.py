"""
半因子性/测地性计算的异常类型
"""


class GeodeticError(Exception):
    """所有可预期错误的基类 (CLI 退出码 2)"""


class InvalidInputError(GeodeticError, ValueError):
    """输入不合法：群规格、子集规格、有向图文件或参数错误"""


class CapExceededError(GeodeticError):
    """实例超出穷举搜索的规模上限"""
