#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vclda/classify.hpp"
#include "vclda/errors.hpp"

namespace vclda {

namespace {

constexpr const char* kMagic = "vclda-model";
constexpr int kVersion = 1;

// %.17g round-trips every finite double exactly.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& os, const char* name,
                  const Eigen::MatrixXd& m) {
  os << name << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ' ';
      os << fmt(m(r, c));
    }
    os << '\n';
  }
}

std::string expect_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) {
    throw ParseError(std::string("model file ended while reading ") + what);
  }
  return line;
}

std::string expect_keyword(std::istream& is, const std::string& keyword) {
  std::istringstream ss(expect_line(is, keyword.c_str()));
  std::string head, rest;
  ss >> head;
  if (head != keyword) {
    throw ParseError("expected '" + keyword + "' in model file, got '" + head +
                     "'");
  }
  std::getline(ss, rest);
  return rest;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed value for ") + what + ": '" + s +
                     "'");
  }
}

Eigen::MatrixXd read_matrix(std::istream& is, const char* name,
                            Eigen::Index rows, Eigen::Index cols) {
  expect_keyword(is, name);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    std::istringstream row(expect_line(is, name));
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(row >> m(r, c))) {
        throw ParseError(std::string("short row ") + std::to_string(r) +
                         " in matrix " + name);
      }
    }
  }
  return m;
}

}  // namespace

void ClassifierModel::save(std::ostream& os) const {
  const SplineBasis& b = basis();
  os << kMagic << ' ' << kVersion << '\n';
  os << "mode " << (mode_ == PriorMode::kEqual ? "equal" : "estimated")
     << '\n';
  os << "degree " << b.degree() << '\n';
  os << "num_basis " << b.num_basis() << '\n';
  os << "p " << feature_count() << '\n';
  os << "prior_class1 " << fmt(mean_model_.prior_class1()) << '\n';
  os << "knots";
  for (double k : b.knots()) os << ' ' << fmt(k);
  os << '\n';
  write_matrix(os, "coeffs_class1", mean_model_.coeffs_class1());
  write_matrix(os, "coeffs_class0", mean_model_.coeffs_class0());
  os << "gamma";
  for (Eigen::Index i = 0; i < gamma_.values.size(); ++i) {
    os << ' ' << fmt(gamma_.values[i]);
  }
  os << '\n';
}

void ClassifierModel::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open '" + path + "' for writing");
  save(os);
  if (!os) throw ParseError("failed while writing '" + path + "'");
}

ClassifierModel ClassifierModel::load(std::istream& is) {
  {
    std::istringstream header(expect_line(is, "header"));
    std::string magic;
    int version = 0;
    header >> magic >> version;
    if (magic != kMagic || version != kVersion) {
      throw ParseError("not a vclda model file (bad header)");
    }
  }
  std::string mode_str = expect_keyword(is, "mode");
  std::istringstream ms(mode_str);
  std::string mode_word;
  ms >> mode_word;
  PriorMode mode;
  if (mode_word == "equal") {
    mode = PriorMode::kEqual;
  } else if (mode_word == "estimated") {
    mode = PriorMode::kEstimated;
  } else {
    throw ParseError("unknown prior mode '" + mode_word + "'");
  }

  const int degree = static_cast<int>(
      parse_double(expect_keyword(is, "degree"), "degree"));
  const int num_basis = static_cast<int>(
      parse_double(expect_keyword(is, "num_basis"), "num_basis"));
  const int p = static_cast<int>(parse_double(expect_keyword(is, "p"), "p"));
  const double prior1 =
      parse_double(expect_keyword(is, "prior_class1"), "prior_class1");

  SplineBasis basis(degree, num_basis);
  {
    std::istringstream ks(expect_keyword(is, "knots"));
    double v;
    std::size_t idx = 0;
    while (ks >> v) {
      if (idx >= basis.knots().size() || basis.knots()[idx] != v) {
        throw ParseError("knot vector does not match a clamped uniform basis");
      }
      ++idx;
    }
    if (idx != basis.knots().size()) {
      throw ParseError("knot vector has the wrong length");
    }
  }

  Eigen::MatrixXd c1 = read_matrix(is, "coeffs_class1", num_basis, p);
  Eigen::MatrixXd c0 = read_matrix(is, "coeffs_class0", num_basis, p);

  GammaCoefficients gamma;
  gamma.p = p;
  gamma.ln = num_basis;
  gamma.values.resize(static_cast<Eigen::Index>(p) * num_basis);
  {
    std::istringstream gs(expect_keyword(is, "gamma"));
    for (Eigen::Index i = 0; i < gamma.values.size(); ++i) {
      if (!(gs >> gamma.values[i])) {
        throw ParseError("gamma vector has the wrong length");
      }
    }
  }

  MeanModel mean_model(std::move(basis), std::move(c1), std::move(c0), prior1);
  return ClassifierModel(std::move(mean_model), std::move(gamma), mode);
}

ClassifierModel ClassifierModel::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open model file '" + path + "'");
  return load(is);
}

}  // namespace vclda
