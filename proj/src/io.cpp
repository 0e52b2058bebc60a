#include "qfuse/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qfuse {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

double to_double(const std::string& tok, const std::string& path,
                 std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) parse_fail(path, line, "bad number '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    parse_fail(path, line, "bad number '" + tok + "'");
  } catch (const std::out_of_range&) {
    parse_fail(path, line, "number out of range '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

Dataset load_csv(const std::string& path, Task task) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  ++lineno;
  const std::size_t width = split(line, ',').size();
  if (width < 2) parse_fail(path, lineno, "need a y column and features");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto toks = split(line, ',');
    if (toks.size() != width)
      parse_fail(path, lineno,
                 "expected " + std::to_string(width) + " fields, got " +
                     std::to_string(toks.size()));
    std::vector<double> row(width);
    for (std::size_t j = 0; j < width; ++j)
      row[j] = to_double(toks[j], path, lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  Dataset d;
  d.task = task;
  d.X.resize(static_cast<Index>(rows.size()), static_cast<Index>(width - 1));
  d.y.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.y[static_cast<Index>(i)] = rows[i][0];
    for (std::size_t j = 1; j < width; ++j)
      d.X(static_cast<Index>(i), static_cast<Index>(j - 1)) = rows[i][j];
  }
  return d;
}

Dataset load_libsvm(const std::string& path, Task task, Index p_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  struct Row {
    double label;
    std::vector<std::pair<Index, double>> entries;
  };
  std::vector<Row> rows;
  Index max_index = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    Row row;
    row.label = to_double(tok, path, lineno);
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        parse_fail(path, lineno, "expected idx:val, got '" + tok + "'");
      const double idx_d = to_double(tok.substr(0, colon), path, lineno);
      const auto idx = static_cast<Index>(idx_d);
      if (idx < 1 || static_cast<double>(idx) != idx_d)
        parse_fail(path, lineno, "indices must be positive integers");
      row.entries.emplace_back(idx - 1,
                               to_double(tok.substr(colon + 1), path, lineno));
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  const Index p = p_hint > 0 ? p_hint : max_index;
  if (max_index > p)
    throw std::runtime_error(path + ": feature index exceeds requested width");

  Dataset d;
  d.task = task;
  d.X = Matrix::Zero(static_cast<Index>(rows.size()), p);
  d.y.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.y[static_cast<Index>(i)] = rows[i].label;
    for (const auto& [j, v] : rows[i].entries)
      d.X(static_cast<Index>(i), j) = v;
  }
  return d;
}

}  // namespace

Dataset load_dataset(const std::string& path, FileFormat format, Task task,
                     Index p_hint) {
  Dataset d = format == FileFormat::Csv ? load_csv(path, task)
                                        : load_libsvm(path, task, p_hint);
  d.validate();
  return d;
}

Vector load_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      std::size_t pos = 0;
      const double v = std::stod(line, &pos);
      if (pos != line.size()) parse_fail(path, lineno, "trailing characters");
      values.push_back(v);
    } catch (const std::invalid_argument&) {
      if (lineno == 1) continue;  // optional header
      parse_fail(path, lineno, "bad number '" + line + "'");
    }
  }
  if (values.empty()) throw std::runtime_error(path + ": no values");
  Vector y(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    y[static_cast<Index>(i)] = values[i];
  return y;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void emit_array(std::ostream& os, const std::vector<double>& xs) {
  os << "[";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << (i ? ", " : "") << format_double(xs[i]);
  os << "]";
}

}  // namespace

void emit_report_json(const SolveReport& report, std::ostream& os) {
  os << "{\n  \"coefficients\": {\n    \"beta0\": "
     << format_double(report.coefficients.beta0) << ",\n    \"beta\": [";
  const Vector& beta = report.coefficients.beta;
  for (Index i = 0; i < beta.size(); ++i)
    os << (i ? ", " : "") << format_double(beta[i]);
  os << "]\n  },\n  \"iterations\": " << report.iterations
     << ",\n  \"termination\": \""
     << (report.termination == Termination::Converged ? "Converged" : "MaxIter")
     << "\",\n  \"traces\": {\n    \"objective\": ";
  emit_array(os, report.objective_trace);
  os << ",\n    \"primal\": ";
  emit_array(os, report.primal_trace);
  os << ",\n    \"dual\": ";
  emit_array(os, report.dual_trace);
  os << ",\n    \"h_step\": ";
  emit_array(os, report.h_step_trace);
  os << "\n  }\n}\n";
}

void emit_report_csv(const SolveReport& report, std::ostream& os) {
  os << "iter,objective,primal,dual,h_step\n";
  for (std::size_t k = 0; k < report.objective_trace.size(); ++k) {
    os << k << "," << format_double(report.objective_trace[k]) << ","
       << format_double(report.primal_trace[k]) << ","
       << format_double(report.dual_trace[k]) << ","
       << format_double(report.h_step_trace[k]) << "\n";
  }
}

void emit_coefficients_csv(const Coefficients& c, std::ostream& os) {
  os << "index,value\n";
  os << "0," << format_double(c.beta0) << "\n";
  for (Index i = 0; i < c.beta.size(); ++i)
    os << (i + 1) << "," << format_double(c.beta[i]) << "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace qfuse
