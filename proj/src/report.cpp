#include "ctrees/solver/report.hpp"

#include "ctrees/util/csv.hpp"

namespace ctrees::dal {

void SolveReport::write_csv(std::ostream& out, bool include_times) const {
  std::vector<std::string> header = {"iteration", "aula_pri[unit]", "aula_dual[unit]",
                                     "admm_pri[unit]", "admm_dual[unit]"};
  if (include_times) {
    header.push_back("phase1[ms]");
    header.push_back("phase2[ms]");
  }
  CsvWriter csv(header);
  for (size_t k = 0; k < history.size(); ++k) {
    CsvWriter::Row row;
    row.integer(static_cast<long long>(k + 1))
        .num(history[k].aula_pri)
        .num(history[k].aula_dual)
        .num(history[k].admm_pri)
        .num(history[k].admm_dual);
    if (include_times) row.num(history[k].phase1_ms).num(history[k].phase2_ms);
    csv.add_row(row.take());
  }
  out << csv.to_string();
}

}  // namespace ctrees::dal
