#include "amex/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "amex/rng.hpp"

namespace amex {

void Dataset::validate() const {
    if (y.empty()) throw PreconditionViolation("dataset: needs at least one row");
    if (x0.size() != y.size() || x1.size() != y.size())
        throw PreconditionViolation("dataset: column sizes differ");
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!std::isfinite(x0[i]) || !std::isfinite(x1[i]) || !std::isfinite(y[i]))
            throw PreconditionViolation("dataset: non-finite value in row " + std::to_string(i));
}

Dataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open dataset file");
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty dataset file");
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "x0,x1,y") throw IoError(path + ": expected header 'x0,x1,y'");
    Dataset data;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double a, b, c;
        char c1, c2;
        if (!(ls >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',')
            throw IoError(path + ": malformed row " + std::to_string(row));
        data.x0.push_back(a);
        data.x1.push_back(b);
        data.y.push_back(c);
    }
    data.validate();
    return data;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "x0,x1,y\n";
    char buf[96];
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", data.x0[i], data.x1[i], data.y[i]);
        out << buf;
    }
    if (!out) throw IoError(path + ": write failed");
}

Dataset sqrt_x0_dataset() {
    Dataset data;
    std::mt19937_64 rng(splitmix64(7));
    for (int i = 0; i < 20; ++i) {
        double x = 4.0 * static_cast<double>(i) / 19.0;
        data.x0.push_back(x);
        data.x1.push_back(4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53));
        data.y.push_back(std::sqrt(x));
    }
    return data;
}

}  // namespace amex
