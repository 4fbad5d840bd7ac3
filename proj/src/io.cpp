#include "waf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "waf/errors.hpp"

namespace waf::io {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Accepts comma- or tab-separated rows; the delimiter is fixed by the first
// line that contains one.
char detect_delimiter(const std::string& line) {
  return line.find('\t') != std::string::npos ? '\t' : ',';
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream stream(line);
  while (std::getline(stream, token, delim)) tokens.push_back(token);
  if (!line.empty() && line.back() == delim) tokens.emplace_back();
  return tokens;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& path, long line, const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError(path, line, "empty field");
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw ParseError(path, line, "invalid number '" + t + "'");
  }
  if (consumed != t.size()) throw ParseError(path, line, "invalid number '" + t + "'");
  if (!std::isfinite(value)) throw ParseError(path, line, "non-finite number '" + t + "'");
  return value;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

GenotypeMatrix parse_genotypes(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || (lines.size() == 1 && trim(lines[0]).empty()))
    throw ParseError(path + ": empty file");

  const char delim = detect_delimiter(lines[0]);
  std::vector<std::string> labels;
  for (auto& t : split(lines[0], delim)) {
    const std::string label = trim(t);
    if (label.empty()) throw ParseError(path, 1, "empty SNV label");
    labels.push_back(label);
  }
  const auto k = labels.size();

  std::vector<Eigen::RowVectorXd> rows;
  for (size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty() && li == lines.size() - 1) break;  // trailing newline
    const auto tokens = split(lines[li], delim);
    if (tokens.size() != k)
      throw ParseError(path, static_cast<long>(li + 1),
                       "expected " + std::to_string(k) + " fields, found " +
                           std::to_string(tokens.size()));
    Eigen::RowVectorXd row(k);
    for (size_t c = 0; c < k; ++c) {
      const std::string t = trim(tokens[c]);
      if (t == "0") {
        row[c] = 0.0;
      } else if (t == "1") {
        row[c] = 1.0;
      } else if (t == "2") {
        row[c] = 2.0;
      } else {
        throw ParseError(path, static_cast<long>(li + 1),
                         "invalid genotype token '" + t + "' (must be 0, 1 or 2)");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no subjects");

  Eigen::MatrixXd counts(rows.size(), k);
  for (size_t r = 0; r < rows.size(); ++r) counts.row(r) = rows[r];
  return {std::move(counts), std::move(labels)};
}

void write_genotypes(const std::string& path, const GenotypeMatrix& g) {
  std::string out;
  for (int c = 0; c < g.snv_count(); ++c) {
    if (c) out += ',';
    out += g.snv_labels()[c];
  }
  out += '\n';
  for (int r = 0; r < g.n(); ++r) {
    for (int c = 0; c < g.snv_count(); ++c) {
      if (c) out += ',';
      out += std::to_string(static_cast<int>(g.counts()(r, c)));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

PhenotypeVector parse_phenotypes(const std::string& path, TraitKind kind) {
  const auto lines = read_lines(path);
  std::vector<double> values;
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string t = trim(lines[li]);
    if (t.empty()) {
      if (li == lines.size() - 1) break;
      throw ParseError(path, static_cast<long>(li + 1), "empty line");
    }
    if (kind == TraitKind::Binary && t != "0" && t != "1")
      throw ParseError(path, static_cast<long>(li + 1),
                       "binary phenotype must be 0 or 1, found '" + t + "'");
    values.push_back(parse_real(path, static_cast<long>(li + 1), t));
  }
  if (values.empty()) throw ParseError(path + ": no phenotype values");
  return {Eigen::Map<Eigen::VectorXd>(values.data(), values.size()), kind};
}

void write_phenotypes(const std::string& path, const PhenotypeVector& y) {
  std::string out;
  for (int i = 0; i < y.n(); ++i) {
    if (y.kind() == TraitKind::Binary) {
      out += std::to_string(static_cast<int>(y.values()[i]));
    } else {
      out += format_full(y.values()[i]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

CovariateMatrix parse_covariates(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path + ": empty file");

  const char delim = detect_delimiter(lines[0]);
  std::vector<std::string> labels;
  for (auto& t : split(lines[0], delim)) labels.push_back(trim(t));
  const auto j = labels.size();

  std::vector<Eigen::RowVectorXd> rows;
  for (size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty() && li == lines.size() - 1) break;
    const auto tokens = split(lines[li], delim);
    if (tokens.size() != j)
      throw ParseError(path, static_cast<long>(li + 1),
                       "expected " + std::to_string(j) + " fields, found " +
                           std::to_string(tokens.size()));
    Eigen::RowVectorXd row(j);
    for (size_t c = 0; c < j; ++c)
      row[c] = parse_real(path, static_cast<long>(li + 1), tokens[c]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no subjects");

  Eigen::MatrixXd values(rows.size(), j);
  for (size_t r = 0; r < rows.size(); ++r) values.row(r) = rows[r];
  return {std::move(values), std::move(labels)};
}

void write_covariates(const std::string& path, const CovariateMatrix& c) {
  std::string out;
  for (int j = 0; j < c.count(); ++j) {
    if (j) out += ',';
    out += c.labels()[j];
  }
  out += '\n';
  for (int r = 0; r < c.n(); ++r) {
    for (int j = 0; j < c.count(); ++j) {
      if (j) out += ',';
      out += format_full(c.values()(r, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

WeightVector parse_weights(const std::string& path, int expected_k) {
  const auto lines = read_lines(path);
  std::vector<double> values;
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string t = trim(lines[li]);
    if (t.empty()) {
      if (li == lines.size() - 1) break;
      throw ParseError(path, static_cast<long>(li + 1), "empty line");
    }
    values.push_back(parse_real(path, static_cast<long>(li + 1), t));
  }
  if (static_cast<int>(values.size()) != expected_k)
    throw ParseError(path + ": expected " + std::to_string(expected_k) + " weights, found " +
                     std::to_string(values.size()));
  return WeightVector::from_values(Eigen::Map<Eigen::VectorXd>(values.data(), values.size()));
}

void write_truth(const std::string& path, const std::vector<std::string>& labels,
                 const Eigen::VectorXd& true_mafs, const Eigen::VectorXd& beta) {
  std::string out = "snv,true_maf,beta\n";
  for (size_t k = 0; k < labels.size(); ++k) {
    out += labels[k];
    out += ',';
    out += format_full(true_mafs[static_cast<Eigen::Index>(k)]);
    out += ',';
    out += format_full(beta[static_cast<Eigen::Index>(k)]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace waf::io
