#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "amex/harness.hpp"

namespace amex {

std::vector<AggregateCell> aggregate_records(const std::vector<RunRecord>& records) {
    std::map<std::tuple<std::string, std::string, std::int64_t>, std::vector<double>> cells;
    for (const RunRecord& r : records)
        cells[{r.env, r.variant, r.n_sims}].push_back(r.episode_return);
    std::vector<AggregateCell> out;
    for (const auto& [key, values] : cells) {
        AggregateCell cell;
        cell.env = std::get<0>(key);
        cell.variant = std::get<1>(key);
        cell.n_sims = std::get<2>(key);
        cell.n = static_cast<int>(values.size());
        double sum = 0.0;
        for (double v : values) sum += v;
        cell.mean = sum / static_cast<double>(cell.n);
        if (cell.n > 1) {
            double sq = 0.0;
            for (double v : values) sq += (v - cell.mean) * (v - cell.mean);
            cell.stddev = std::sqrt(sq / static_cast<double>(cell.n - 1));
        }
        out.push_back(std::move(cell));
    }
    return out;
}

std::string format_aggregate_table(const std::vector<AggregateCell>& cells) {
    std::ostringstream out;
    out << "env          variant      n_sims       mean        std    n\n";
    char buf[160];
    for (const AggregateCell& c : cells) {
        std::snprintf(buf, sizeof buf, "%-12s %-12s %7lld %10.6f %10.6f %4d\n", c.env.c_str(),
                      c.variant.c_str(), static_cast<long long>(c.n_sims), c.mean, c.stddev,
                      c.n);
        out << buf;
    }
    return out.str();
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "env,variant,n_sims,seed,episode_return,steps_taken,unique_states,wall_ms\n";
    char buf[256];
    for (const RunRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%s,%lld,%llu,%.6f,%lld,%lld,%.6f\n", r.env.c_str(),
                      r.variant.c_str(), static_cast<long long>(r.n_sims),
                      static_cast<unsigned long long>(r.seed), r.episode_return,
                      static_cast<long long>(r.steps_taken),
                      static_cast<long long>(r.unique_states), r.wall_ms);
        out << buf;
    }
    return out.str();
}

void write_csv(const std::vector<RunRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << records_to_csv(records);
    if (!out) throw IoError(path + ": write failed");
}

std::string format_oracle_table(const OracleResult& result) {
    std::ostringstream out;
    out << "action,value\n";
    char buf[64];
    for (std::size_t a = 0; a < result.action_values.size(); ++a) {
        std::snprintf(buf, sizeof buf, "%zu,%.9f\n", a, result.action_values[a]);
        out << buf;
    }
    return out.str();
}

}  // namespace amex
