#!/usr/bin/env python3
"""Extract the four U-map One appendix tables from paper.md into a C++ header
of frozen test fixtures. Run manually; the generated header is committed."""
import re

SRC = "/root/proj/paper.md"
DST = "/root/proj/tests/umap_one_tables.hpp"

text = open(SRC).read()

names = {
    "tab:appA1": "kSquared",
    "tab:appA2": "kNormalized",
    "tab:appA3": "kNoisy",
    "tab:appA4": "kNormalizedNoisy",
}

row_re = re.compile(
    r"^\s*(\d+)\s*&\s*([A-F]+)\s*&\s*([-\d.&\s]+)\\\\\s*$")

blocks = re.findall(r"\\begin\{table\}(.*?)\\end\{table\}", text, re.S)
tables = {}
for block in blocks:
    m = re.search(r"\\label\{(tab:appA\d)\}", block)
    if not m or m.group(1) not in names:
        continue
    rows = []
    for line in block.splitlines():
        mrow = row_re.match(line)
        if mrow:
            vals = [float(v.strip()) for v in mrow.group(3).split("&")]
            rows.append((int(mrow.group(1)), mrow.group(2), vals))
    tables[names[m.group(1)]] = rows

assert sorted(tables) == sorted(names.values()), tables.keys()
for name, t in tables.items():
    assert len(t) == 62, f"{name}: expected 62 rows, got {len(t)}"
    assert [r[0] for r in t] == list(range(62))
    assert all(len(r[2]) == 6 for r in t)

with open(DST, "w") as f:
    f.write("// Frozen oracle tables for U-map One (generated by extract_tables.py).\n")
    f.write("#pragma once\n\n#include <array>\n#include <string_view>\n\n")
    f.write("namespace umap_one_tables {\n\n")
    f.write("inline constexpr int kTopicCount = 62;\n")
    f.write("inline constexpr int kConceptCount = 6;\n\n")
    topics = [r[1] for r in tables["kSquared"]]
    f.write("inline constexpr std::array<std::string_view, kTopicCount> kTopics = {\n")
    for i in range(0, 62, 8):
        f.write("    " + ", ".join(f'"{t}"' for t in topics[i:i + 8]) + ",\n")
    f.write("};\n\n")
    for name in ["kSquared", "kNormalized", "kNoisy", "kNormalizedNoisy"]:
        f.write(f"inline constexpr double {name}[kTopicCount][kConceptCount] = {{\n")
        for idx, topic, vals in tables[name]:
            body = ", ".join(str(v) for v in vals)
            f.write(f"    {{{body}}},  // {topic}\n")
        f.write("};\n\n")
    f.write("}  // namespace umap_one_tables\n")
print("wrote", DST)
