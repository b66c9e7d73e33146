import re
from pathlib import Path


def test_quick_start_block_runs():
    readme = Path(__file__).resolve().parent.parent / "README.md"
    blocks = re.findall(r"```python\n(.*?)```", readme.read_text(), re.DOTALL)
    assert blocks, "README must contain a python quick-start block"
    namespace: dict = {}
    exec(compile(blocks[0], str(readme), "exec"), namespace)
    assert namespace["cert"].valid
