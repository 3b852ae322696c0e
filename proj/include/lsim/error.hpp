#pragma once

#include <stdexcept>
#include <string>

namespace lsim {

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A corpus, config, or log record that could not be parsed.
class ParseError : public Error {
  public:
    ParseError(std::string file, long record, std::string field, const std::string& what)
        : Error(describe(file, record, field, what)),
          file_(std::move(file)),
          record_(record),
          field_(std::move(field)) {}

    const std::string& file() const { return file_; }
    long record() const { return record_; }  // -1 when the whole document is broken
    const std::string& field() const { return field_; }

  private:
    static std::string describe(const std::string& file, long record, const std::string& field,
                                const std::string& what) {
        std::string msg = file;
        if (record >= 0) msg += ": record " + std::to_string(record);
        if (!field.empty()) msg += ": field '" + field + "'";
        return msg + ": " + what;
    }

    std::string file_;
    long record_;
    std::string field_;
};

/// Payload or structured output does not satisfy its schema.
class SchemaError : public Error {
  public:
    using Error::Error;
};

/// Transport or backend-reported failure after retries were exhausted.
class BackendError : public Error {
  public:
    BackendError(const std::string& what, int attempts) : Error(what), attempts_(attempts) {}
    int attempts() const { return attempts_; }

  private:
    int attempts_;
};

}  // namespace lsim
