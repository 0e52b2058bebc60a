#pragma once

#include <iosfwd>
#include <string>

#include "qfuse/model.hpp"
#include "qfuse/solver.hpp"

namespace qfuse {

enum class FileFormat { Csv, Libsvm };

/// CSV: header row, first column `y`, remaining columns features.
/// LIBSVM: `label idx:val ...`, 1-based indices, densified; p_hint fixes the
/// width (0 = infer from the max index). Classification labels must be +-1.
/// Malformed rows are reported with their line number.
Dataset load_dataset(const std::string& path, FileFormat format, Task task,
                     Index p_hint = 0);

/// One value per line (an optional non-numeric header line is skipped).
Vector load_signal(const std::string& path);

/// All floats are serialized with 17 significant digits so emitted values
/// reload bit-identically.
std::string format_double(double x);

void emit_report_json(const SolveReport& report, std::ostream& os);
/// One row per recorded iteration: iter,objective,primal,dual,h_step.
void emit_report_csv(const SolveReport& report, std::ostream& os);
/// `index,value`; index 0 is the intercept.
void emit_coefficients_csv(const Coefficients& c, std::ostream& os);

void write_file(const std::string& path, const std::string& contents);

}  // namespace qfuse
