#ifndef ANYON_TOOLS_MATRIX_IO_HPP
#define ANYON_TOOLS_MATRIX_IO_HPP

#include <optional>
#include <string>

#include "anyon/errors.hpp"
#include "anyon/exact_linalg.hpp"

namespace anyon::cli {

class IoError : public Error {
public:
    using Error::Error;
};

enum class FileFormat { Structured, Plain };

// Structured files are JSON objects {"gram": [[...]], "target": "...", "comment": "..."}.
// Plain files are whitespace-separated rows; lines starting with '#' are comments,
// except "# target: X" and "# comment: X" which carry the metadata.
struct MatrixFile {
    IntegerMatrix gram;
    std::optional<std::string> target;
    std::optional<std::string> comment;
};

FileFormat parse_format(const std::string& name);
// Detects the format from the first non-blank character; checks squareness and symmetry.
MatrixFile parse_matrix_text(const std::string& text);
MatrixFile load_matrix_file(const std::string& path);
std::string render_matrix_file(const MatrixFile& file, FileFormat format);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace anyon::cli

#endif
