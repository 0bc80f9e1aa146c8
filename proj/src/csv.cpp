#include "vclda/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "vclda/errors.hpp"

namespace vclda {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_cell(const std::string& cell, std::size_t row_1based,
                  std::size_t col_1based) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    while (pos < cell.size() &&
           std::isspace(static_cast<unsigned char>(cell[pos])))
      ++pos;
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError("non-numeric cell '" + cell + "' at row " +
                     std::to_string(row_1based) + ", column " +
                     std::to_string(col_1based));
  }
}

}  // namespace

void write_dataset_csv(std::ostream& os, const Dataset& data) {
  const Eigen::Index p = data.X.cols();
  os << "u,y";
  for (Eigen::Index j = 0; j < p; ++j) os << ",x" << (j + 1);
  os << '\n';
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    os << fmt(data.U[i]) << ',' << data.Y[i];
    for (Eigen::Index j = 0; j < p; ++j) os << ',' << fmt(data.X(i, j));
    os << '\n';
  }
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings
  if (!os) throw ParseError("cannot open '" + path + "' for writing");
  write_dataset_csv(os, data);
  if (!os) throw ParseError("failed while writing '" + path + "'");
}

Dataset read_dataset_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty dataset file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "u" || header[1] != "y") {
    throw ParseError("dataset header must be 'u,y,x1,...,xp'");
  }
  const std::size_t p = header.size() - 2;
  for (std::size_t j = 0; j < p; ++j) {
    if (header[j + 2] != "x" + std::to_string(j + 1)) {
      throw ParseError("dataset header must be 'u,y,x1,...,xp'");
    }
  }

  std::vector<double> us;
  std::vector<int> ys;
  std::vector<double> xs;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != p + 2) {
      throw ParseError("row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " fields, expected " +
                       std::to_string(p + 2));
    }
    us.push_back(parse_cell(cells[0], row, 1));
    const double y = parse_cell(cells[1], row, 2);
    if (y != 0.0 && y != 1.0) {
      throw ParseError("label must be 0 or 1 at row " + std::to_string(row) +
                       ", column 2");
    }
    ys.push_back(static_cast<int>(y));
    for (std::size_t j = 0; j < p; ++j) {
      xs.push_back(parse_cell(cells[j + 2], row, j + 3));
    }
  }
  if (us.empty()) throw ParseError("dataset has no sample rows");

  Dataset data;
  const Eigen::Index n = static_cast<Eigen::Index>(us.size());
  data.X.resize(n, static_cast<Eigen::Index>(p));
  data.U.resize(n);
  data.Y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    data.U[i] = us[static_cast<std::size_t>(i)];
    data.Y[i] = ys[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < p; ++j) {
      data.X(i, static_cast<Eigen::Index>(j)) =
          xs[static_cast<std::size_t>(i) * p + j];
    }
  }
  return data;
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open dataset file '" + path + "'");
  return read_dataset_csv(is);
}

}  // namespace vclda
