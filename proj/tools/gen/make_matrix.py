"""Regenerates data/compatibility-matrix.csv from the rules below."""
import sys

PERMISSIVE = ["MIT", "BSD-2-Clause", "BSD-3-Clause", "ISC", "Apache-2.0", "Zlib", "Unlicense", "PSF-2.0",
              "0BSD", "HPND", "NCSA"]
WEAK = ["MPL-2.0", "LGPL-2.1-only", "LGPL-2.1-or-later", "LGPL-3.0-only", "LGPL-3.0-or-later", "EPL-2.0"]
STRONG = ["GPL-2.0-only", "GPL-2.0-or-later", "GPL-3.0-only", "GPL-3.0-or-later",
          "AGPL-3.0-only", "AGPL-3.0-or-later"]
PROPRIETARY = "proprietary-all-rights-reserved"
ALL = PERMISSIVE + WEAK + STRONG + [PROPRIETARY]

GPL2 = {"GPL-2.0-only", "GPL-2.0-or-later"}
GPL3 = {"GPL-3.0-only", "GPL-3.0-or-later"}
AGPL = {"AGPL-3.0-only", "AGPL-3.0-or-later"}
LGPL3 = {"LGPL-3.0-only", "LGPL-3.0-or-later"}


def verdict(inbound, outbound):
    if inbound == outbound:
        return "C"
    if inbound == PROPRIETARY:
        return "U" if outbound == PROPRIETARY else "I"
    if inbound in PERMISSIVE:
        # Apache-2.0 patent terms clash with GPLv2-only.
        if inbound == "Apache-2.0" and outbound == "GPL-2.0-only":
            return "I"
        return "C"
    if inbound == "MPL-2.0":
        return "C"
    if inbound == "EPL-2.0":
        if outbound in PERMISSIVE or outbound == PROPRIETARY:
            return "C"
        return "U"
    if inbound.startswith("LGPL"):
        if outbound == PROPRIETARY:
            return "U"  # depends on how the library is linked
        if inbound in LGPL3 and outbound == "GPL-2.0-only":
            return "I"
        return "C"
    # Strong copyleft: only into the same family at a reachable version.
    if inbound == "GPL-2.0-only":
        return "C" if outbound == "GPL-2.0-or-later" else "I"
    if inbound == "GPL-2.0-or-later":
        return "C" if outbound in GPL2 | GPL3 | AGPL else "I"
    if inbound in GPL3:
        return "C" if outbound in GPL3 | AGPL | {"GPL-2.0-or-later"} else "I"
    if inbound in AGPL:
        return "C" if outbound in GPL3 | AGPL else "I"
    return "U"


def main(out):
    lines = ["# inbound (dependency) license per row, outbound (project) license per column",
             "# C compatible, I incompatible, U unknown",
             ",".join(["inbound"] + ALL)]
    for i in ALL:
        lines.append(",".join([i] + [verdict(i, o) for o in ALL]))
    with open(out, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/compatibility-matrix.csv")
