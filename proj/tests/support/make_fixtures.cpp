// Writes the committed end-to-end fixtures: make_fixtures <dir>
#include <iostream>
#include <string>

#include "fixture_gen.hpp"

using namespace rxnlab::testing;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  const ProcedureStream procs = make_procedures(11, 200, 9, 7, 5);
  write_lines(dir + "/procedures.jsonl", procs.lines);
  const SplitPool pool = make_split_pool(12, 150, 600);
  write_lines(dir + "/train.jsonl", pool.train);
  write_lines(dir + "/candidates.jsonl", pool.candidates);
  std::vector<std::string> pred;
  std::vector<std::string> ref;
  make_generation_set(13, 300, pred, ref);
  write_lines(dir + "/pred.jsonl", pred);
  write_lines(dir + "/ref.jsonl", ref);
  return 0;
}
