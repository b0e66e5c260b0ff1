#include "simplexobs/obstruction.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "simplexobs/errors.hpp"

namespace simplexobs {

namespace {

using nlohmann::json;

void check_degree(int n) {
  if (n < kMinSystemDegree || n > kMaxSystemDegree) {
    throw SizeLimitError("obstruction system: n must lie in [" + std::to_string(kMinSystemDegree) +
                         ", " + std::to_string(kMaxSystemDegree) + "], got " + std::to_string(n));
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  return in;
}

json read_json(const std::filesystem::path& path, int expected_n) {
  auto in = open_for_read(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  if (j.at("format_version").get<int>() != kSystemFormatVersion) {
    throw InputError(path.string() + ": unsupported format_version");
  }
  if (expected_n > 0 && j.at("n").get<int>() != expected_n) {
    throw InputError(path.string() + ": n does not match the other files");
  }
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_for_write(path);
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::vector<std::int64_t> build_delta(const CellIndex& columns) {
  if (columns.dim() != 1) throw DimensionError("build_delta: expected the edge index");
  std::vector<std::int64_t> numerators;
  numerators.reserve(columns.size());
  for (const auto& cell : columns.entries()) {
    numerators.push_back(cell.block.size() % 2 == 0 ? 1 : 0);
  }
  return numerators;
}

ObstructionSystem build_system(int n) {
  check_degree(n);
  return build_system(TotalOrder::lexicographic(n));
}

ObstructionSystem build_system(const TotalOrder& order) {
  const auto n = order.degree();
  check_degree(n);
  auto columns = CellIndex::build(order, 1);
  auto rows = CellIndex::build(order, 2);
  IntMatrix matrix(columns.size());

  for (const auto& cell : rows.entries()) {
    const auto& v = cell.simplex.vertices();
    const std::pair<Subsimplex, std::int64_t> boundary[] = {
        {Subsimplex({v[0], v[1]}), 1},
        {Subsimplex({v[1], v[2]}), 1},
        {Subsimplex({v[0], v[2]}), -1},
    };
    std::vector<MatrixEntry> entries;
    for (const auto& [edge, orientation] : boundary) {
      const auto r = columns.range(edge);
      if (!r) throw InternalError("face edge missing from the column index");
      for (auto c = r->first; c < r->second; ++c) {
        // Edge blocks refine face blocks, so testing one element suffices.
        const auto probe = columns[c].block.front();
        if (std::binary_search(cell.block.begin(), cell.block.end(), probe)) {
          entries.push_back({c, orientation});
        }
      }
    }
    matrix.push_row(std::move(entries));
  }

  auto delta = build_delta(columns);
  std::vector<std::int64_t> rhs;
  rhs.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::int64_t twice = 0;
    for (const auto& e : matrix.row(r)) twice += e.value * delta[e.col];
    if (twice % kDeltaDenominator != 0) {
      throw InternalError("right-hand side is not integral at row " + std::to_string(r));
    }
    rhs.push_back(twice / kDeltaDenominator);
  }

  return ObstructionSystem{n, std::move(columns), std::move(rows), std::move(matrix),
                           std::move(delta), std::move(rhs)};
}

void write_matrix_market(std::ostream& out, const IntMatrix& m,
                         const std::vector<std::string>& comments) {
  out << "%%MatrixMarket matrix coordinate integer general\n";
  for (const auto& c : comments) out << "% " << c << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) out << r + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  }
}

IntMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("matrix market: empty input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
      field != "integer" || symmetry != "general") {
    throw InputError("matrix market: expected 'matrix coordinate integer general', got '" + line +
                     "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(std::istringstream(line) >> rows >> cols >> nnz)) {
    throw InputError("matrix market: malformed size line");
  }
  std::vector<std::vector<MatrixEntry>> buckets(rows);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    std::int64_t v = 0;
    if (!(in >> r >> c >> v)) throw InputError("matrix market: truncated entry list");
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw InputError("matrix market: entry index out of range");
    }
    buckets[r - 1].push_back({c - 1, v});
  }
  IntMatrix m(cols);
  for (auto& b : buckets) m.push_row(std::move(b));
  return m;
}

void export_system(const ObstructionSystem& sys, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  {
    auto out = open_for_write(dir / "M.mtx");
    write_matrix_market(out, sys.matrix,
                        {"n " + std::to_string(sys.n),
                         "format_version " + std::to_string(kSystemFormatVersion),
                         "rows: (face, block) pairs; columns: (edge, block) pairs; see "
                         "indices.json"});
    if (!out) throw std::runtime_error("write failed: " + (dir / "M.mtx").string());
  }
  write_json(dir / "delta.json", {{"format_version", kSystemFormatVersion},
                                  {"n", sys.n},
                                  {"denominator", kDeltaDenominator},
                                  {"numerators", sys.delta_numerators}});
  write_json(dir / "D.json",
             {{"format_version", kSystemFormatVersion}, {"n", sys.n}, {"values", sys.rhs}});
  write_json(dir / "indices.json", {{"format_version", kSystemFormatVersion},
                                    {"n", sys.n},
                                    {"columns", sys.columns},
                                    {"rows", sys.rows}});
}

ObstructionSystem import_system(const std::filesystem::path& dir) {
  const auto indices = read_json(dir / "indices.json", 0);
  const auto n = indices.at("n").get<int>();
  check_degree(n);
  auto columns = cell_index_from_json(indices.at("columns"), n, 1);
  auto rows = cell_index_from_json(indices.at("rows"), n, 2);

  auto delta_json = read_json(dir / "delta.json", n);
  if (delta_json.at("denominator").get<std::int64_t>() != kDeltaDenominator) {
    throw InputError("delta.json: unsupported denominator");
  }
  auto delta = delta_json.at("numerators").get<std::vector<std::int64_t>>();
  auto rhs = read_json(dir / "D.json", n).at("values").get<std::vector<std::int64_t>>();

  auto in = open_for_read(dir / "M.mtx");
  auto matrix = read_matrix_market(in);

  if (matrix.rows() != rows.size() || matrix.cols() != columns.size() ||
      delta.size() != columns.size() || rhs.size() != rows.size()) {
    throw InputError("imported system files disagree on dimensions");
  }
  return ObstructionSystem{n, std::move(columns), std::move(rows), std::move(matrix),
                           std::move(delta), std::move(rhs)};
}

}  // namespace simplexobs
