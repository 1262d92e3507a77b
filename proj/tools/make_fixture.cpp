// Writes the bundled synthetic bilingual fixture into a directory.
#include "fixtures/synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture <output-dir>\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const auto f = logometre::fixtures::bilingual_fixture();
  const auto write = [&](const char* name, const std::string& content) {
    std::ofstream(dir / name, std::ios::binary) << content;
  };
  write("synthetic_fr.tsv", f.corpus_a);
  write("synthetic_pt.tsv", f.corpus_b);
  write("lexicon_fr_pt.tsv", f.lexicon);
  return 0;
}
