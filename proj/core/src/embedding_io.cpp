#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcns/encoder.hpp"

namespace mcns {

void write_embeddings(const std::string& path, std::span<const std::string> names, const Matrix& table) {
  if (names.size() != table.rows()) throw ArgumentError("name count does not match embedding rows");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("cannot write " + path);
  std::fprintf(f, "%zu %zu\n", table.rows(), table.cols());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    std::fputs(names[r].c_str(), f);
    for (double x : table.row(r)) std::fprintf(f, " %.6f", x);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

EmbeddingFile read_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(hs >> rows >> cols) || cols == 0) throw DataError(path + ": bad header '" + header + "'");

  EmbeddingFile out;
  out.table = Matrix(rows, cols);
  out.names.reserve(rows);
  std::string line;
  std::size_t r = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (r == rows) throw DataError(path + ": more rows than the header's " + std::to_string(rows));
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    auto row = out.table.row(r);
    std::size_t c = 0;
    double x = 0;
    while (ls >> x) {
      if (c == cols) break;
      row[c++] = x;
    }
    if (c != cols || !ls.eof()) {
      throw DataError(path + ":" + std::to_string(r + 2) + ": expected " + std::to_string(cols) + " values");
    }
    out.names.push_back(std::move(name));
    ++r;
  }
  if (r != rows) throw DataError(path + ": header promises " + std::to_string(rows) + " rows, found " + std::to_string(r));
  return out;
}

}  // namespace mcns
