#!/usr/bin/env python3
# Copyright 2026 The wirenl Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Prepends the Apache-2.0 header to C++ and CMake sources that lack it."""

import pathlib
import sys

LINES = [
    "Copyright 2026 The wirenl Authors.",
    "",
    'Licensed under the Apache License, Version 2.0 (the "License");',
    "you may not use this file except in compliance with the License.",
    "You may obtain a copy of the License at",
    "",
    "    http://www.apache.org/licenses/LICENSE-2.0",
    "",
    "Unless required by applicable law or agreed to in writing, software",
    'distributed under the License is distributed on an "AS IS" BASIS,',
    "WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.",
    "See the License for the specific language governing permissions and",
    "limitations under the License.",
]


def header(prefix):
    return "".join((prefix + " " + l).rstrip() + "\n" for l in LINES) + "\n"


def sources(root):
    for d in ("src", "include", "tests", "tools"):
        for p in sorted((root / d).rglob("*")):
            if p.suffix in (".h", ".cc"):
                yield p, "//"
            elif p.suffix == ".py":
                yield p, "#"
    yield root / "CMakeLists.txt", "#"
    yield root / "tests" / "CMakeLists.txt", "#"
    yield from ((p, "#") for p in sorted((root / "cmake").glob("*.cmake")))


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    for path, prefix in sources(root):
        text = path.read_text()
        if "Licensed under the Apache License" in text[:1000]:
            continue
        shebang = ""
        if text.startswith("#!"):
            shebang, _, text = text.partition("\n")
            shebang += "\n"
        path.write_text(shebang + header(prefix) + text)
        print(path.relative_to(root))


if __name__ == "__main__":
    main()
