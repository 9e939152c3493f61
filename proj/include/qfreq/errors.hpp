#pragma once

#include <stdexcept>
#include <string>

namespace qfreq {

// Error taxonomy shared by all modules. The CLI maps config_error to exit
// code 2 and numeric/convergence errors to exit code 3.

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct index_error : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degenerate_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct convergence_error : numeric_error {
  using numeric_error::numeric_error;
};

}  // namespace qfreq
