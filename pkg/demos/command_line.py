"""
The command line
================

A problem file names a ring, some ideals and one command. The answer is a
JSON document on stdout; exit code 1 means the horizon was too short.
"""

import json
import subprocess
import sys
import tempfile

PROBLEM = """\
p=7
vars=x,y
ideal f = x^2 + y^3
cmd jumps f T=1 emax=3
"""

with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as fh:
    fh.write(PROBLEM)

proc = subprocess.run([sys.executable, "-m", "frobkit", fh.name], capture_output=True, text=True)
doc = json.loads(proc.stdout)
print("exit", proc.returncode)
for j in doc["result"]["jumps"]:
    print("jump in", (j["interval_lo"], j["interval_hi"]), j["tau_left"], "->", j["tau_right"])

# a short horizon is reported, not guessed
with open(fh.name, "w") as out:
    out.write("p=2\nvars=x,y\npoly g = x^2*y\ncmd chain g emax=1\n")
proc = subprocess.run([sys.executable, "-m", "frobkit", fh.name], capture_output=True, text=True)
print("exit", proc.returncode, proc.stderr.strip())
