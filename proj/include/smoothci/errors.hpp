#pragma once

#include <stdexcept>

namespace smoothci {

//! A statistic is undefined for the data at hand (e.g. the plug-in
//! bandwidth when the sample mean is zero). Configuration mistakes are
//! reported as std::invalid_argument instead.
class StatisticalError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

}  // namespace smoothci
