#ifndef CONTRAST_ERROR_HPP
#define CONTRAST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace contrast {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace contrast

#endif
