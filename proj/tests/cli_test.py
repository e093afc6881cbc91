# Copyright 2026 The pmdm Authors
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

"""End-to-end checks of the pmdm binary.

Usage: cli_test.py PMDM_EXE SOURCE_DIR
"""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

EXE = ""
SRC = pathlib.Path(".")


def schema(name):
    return json.loads((SRC / "schemas" / f"{name}.schema.json").read_text())


def data(name):
    return str(SRC / "data" / name)


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([EXE, *args], capture_output=True, text=True,
                          env=full_env, timeout=300)


def run_json(*args, schema_name=None):
    p = run(*args)
    if p.returncode != 0:
        raise AssertionError(f"exit {p.returncode}: {p.stderr}")
    out = json.loads(p.stdout)
    if schema_name:
        jsonschema.validate(out, schema(schema_name))
    return out


class Solve(unittest.TestCase):
    def test_small_dictionary(self):
        out = run_json("solve", "--dict", data("t1.txt"), "--query", "abab",
                       "--z", "4", schema_name="solution")
        self.assertEqual(out["k"], 3)
        self.assertEqual(out["positions"], [1, 2, 4])
        self.assertEqual(out["matches"], 4)
        self.assertEqual(out["masked"], "??a?")

    def test_exit_codes(self):
        p = run("solve", "--dict", data("t1.txt"), "--query", "abab", "--z", "9")
        self.assertEqual(p.returncode, 1)
        self.assertIn("infeasible threshold", p.stderr)
        self.assertEqual(p.stdout, "")
        p = run("solve", "--dict", data("mixed-lengths.txt"), "--query", "abab",
                "--z", "1")
        self.assertEqual(p.returncode, 2)
        p = run("solve", "--dict", data("missing.txt"), "--query", "abab", "--z", "1")
        self.assertEqual(p.returncode, 2)
        p = run("solve", "--dict", data("t1.txt"), "--query", "ab", "--z", "1")
        self.assertEqual(p.returncode, 2)
        p = run("solve", "--bogus")
        self.assertEqual(p.returncode, 2)

    def test_capacity_guard(self):
        p = run("index", "build", "--dict", data("t1.txt"), "--kind", "small",
                "--out", os.devnull,
                env={"PMDM_TABLE_LIMIT": "3"})
        self.assertEqual(p.returncode, 3)

    def test_query_file_runs_multi_query(self):
        out = run_json("solve", "--dict", data("t1.txt"), "--query-file",
                       data("queries.txt"), "--z", "2",
                       schema_name="multi-solution")
        self.assertEqual(out["k"], 1)
        self.assertEqual(len(out["matches"]), 2)
        self.assertTrue(all(m >= 2 for m in out["matches"]))

    def test_hypergraph_dump(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "h.json")
            run_json("solve", "--dict", data("t1.txt"), "--query", "abab",
                     "--z", "2", "--dump-hypergraph", path)
            h = json.loads(pathlib.Path(path).read_text())
            jsonschema.validate(h, schema("hypergraph"))
            self.assertEqual(h["base"], 1)
            self.assertEqual(sum(e["w"] for e in h["edges"]) + h["base"], 5)

    def test_other_formats(self):
        p = run("--format", "csv", "solve", "--dict", data("t1.txt"), "--query",
                "abab", "--z", "4")
        self.assertEqual(p.returncode, 0)
        self.assertEqual(p.stdout.splitlines()[1], "3,1;2;4,4,??a?")
        p = run("--wildcard", "*", "solve", "--dict", data("t1.txt"), "--query",
                "abab", "--z", "4")
        self.assertEqual(json.loads(p.stdout)["masked"], "**a*")


class RoundTrip(unittest.TestCase):
    def test_solve_mask_count(self):
        for z in range(1, 6):
            for q in ("abab", "bbbb", "aaba"):
                sol = run_json("solve", "--dict", data("t1.txt"), "--query", q,
                               "--z", str(z), schema_name="solution")
                positions = ",".join(map(str, sol["positions"]))
                masked = run_json("mask", "--query", q, "--positions",
                                  positions)["masked"]
                self.assertEqual(masked, sol["masked"])
                count = run_json("count", "--dict", data("t1.txt"), "--pattern",
                                 masked)["matches"]
                self.assertEqual(count, sol["matches"])
                self.assertGreaterEqual(count, z)

    def test_heuristics_are_feasible(self):
        for cmd in (["greedy", "--tau", "2"], ["greedy"], ["baseline"]):
            out = run_json(*cmd, "--dict", data("t1.txt"), "--query", "abab",
                           "--z", "4", schema_name="solution")
            self.assertGreaterEqual(out["matches"], 4)
            self.assertGreaterEqual(out["k"], 3)


class Index(unittest.TestCase):
    def test_every_kind_answers_like_solve(self):
        with tempfile.TemporaryDirectory() as tmp:
            builds = {
                "small": [],
                "split": ["--tau", "2"],
                "simple": ["--k", "3"],
            }
            for kind, extra in builds.items():
                path = os.path.join(tmp, kind + ".bin")
                info = run_json("index", "build", "--dict", data("t1.txt"),
                                "--kind", kind, *extra, "--out", path)
                self.assertEqual(info["kind"], kind)
                out = run_json("index", "query", "--index", path, "--query",
                               "abab", "--z", "4", schema_name="solution")
                self.assertTrue(out["found"])
                self.assertEqual(out["k"], 3)
                self.assertGreaterEqual(out["matches"], 4)

    def test_corrupt_index_rejected(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.bin")
            pathlib.Path(path).write_bytes(b"not an index")
            p = run("index", "query", "--index", path, "--query", "abab",
                    "--z", "1")
            self.assertEqual(p.returncode, 2)


class Reduce(unittest.TestCase):
    def test_clique(self):
        with tempfile.TemporaryDirectory() as tmp:
            dict_path = os.path.join(tmp, "c.txt")
            info = run_json("reduce", "clique", "--graph", data("triangle.txt"),
                            "--k", "3", "--out-dict", dict_path)
            self.assertEqual(info["z"], 3)
            sol = run_json("solve", "--dict", dict_path, "--query",
                           info["query"], "--z", str(info["z"]))
            # The triangle 1-2-3 is the only 3-clique.
            self.assertEqual(sol["positions"], [1, 2, 3])

    def test_mu_both_ways(self):
        mu = json.loads(pathlib.Path(data("worked-mu.json")).read_text())
        jsonschema.validate(mu, schema("mu"))
        with tempfile.TemporaryDirectory() as tmp:
            dict_path = os.path.join(tmp, "m.txt")
            info = run_json("reduce", "from-mu", "--mu", data("worked-mu.json"),
                            "--out-dict", dict_path)
            sol = run_json("solve", "--dict", dict_path, "--query",
                           info["query"], "--z", str(info["z"]))
            self.assertEqual(sol["k"], 3)
        back = run_json("reduce", "to-mu", "--dict", data("t1.txt"), "--query",
                        "abab", "--z", "2", schema_name="mu")
        self.assertEqual(back["sets"], [[], [3], [2, 4], [1], [4]])


class Bench(unittest.TestCase):
    def test_generate_and_run(self):
        with tempfile.TemporaryDirectory() as tmp:
            dict_path = os.path.join(tmp, "g.txt")
            run_json("bench", "gen", "--d", "300", "--l", "10", "--sigma", "4",
                     "--seed", "3", "--mode", "clustered", "--out", dict_path)
            lines = pathlib.Path(dict_path).read_text().splitlines()
            self.assertEqual(len(lines), 300)
            report_path = os.path.join(tmp, "r.json")
            csv_path = os.path.join(tmp, "r.csv")
            run_json("bench", "run", "--dict", dict_path, "--z", "5", "--algos",
                     "bf,ba,gr3", "--queries", "8", "--seed", "1", "--out",
                     report_path, "--csv", csv_path)
            report = json.loads(pathlib.Path(report_path).read_text())
            jsonschema.validate(report, schema("report"))
            self.assertEqual(len(report["records"]), 24)
            by_name = {s["algorithm"]: s for s in report["summary"]}
            self.assertEqual(by_name["bf"]["avg_re"], 0)
            self.assertLessEqual(by_name["bf"]["avg_ss"], by_name["gr3"]["avg_ss"])
            csv_lines = pathlib.Path(csv_path).read_text().splitlines()
            self.assertEqual(csv_lines[0],
                             "query,algorithm,k,status,iterations,elapsed_us")
            self.assertEqual(len(csv_lines), 25)

    def test_unknown_algorithm(self):
        p = run("bench", "run", "--dict", data("t1.txt"), "--z", "1", "--algos",
                "gr0")
        self.assertEqual(p.returncode, 2)


if __name__ == "__main__":
    EXE = os.path.abspath(sys.argv[1])
    SRC = pathlib.Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
