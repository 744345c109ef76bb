#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amex/errors.hpp"

namespace amex {

// Regression dataset with two input columns and one target column.
struct Dataset {
    std::vector<double> x0;
    std::vector<double> x1;
    std::vector<double> y;

    std::size_t size() const { return y.size(); }
    void validate() const;
};

// CSV with the exact header "x0,x1,y", one row per sample.
Dataset load_dataset_csv(const std::string& path);
void write_dataset_csv(const Dataset& data, const std::string& path);

// y = sqrt(x0) on 20 points: x0 evenly spaced on [0,4], x1 independent
// seeded-uniform values on [0,4].
Dataset sqrt_x0_dataset();

}  // namespace amex
