"""版本信息"""

__version__ = "0.1.0"
__author__ = "Zhuoyang Wu"
__email__ = "wuzhuoyang252@gmail.com"
__description__ = "Beurling 变换的截断、极大算子与 Cotlar 型不等式数值实验室"
