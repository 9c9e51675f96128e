#ifndef CURSOR_ERROR_H_
#define CURSOR_ERROR_H_

#include <stdexcept>
#include <string>

namespace cursor {

// Contract violations: bad indices, finished episodes, mismatched inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable files and malformed serialized data.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cursor

#endif  // CURSOR_ERROR_H_
