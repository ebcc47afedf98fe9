#pragma once

#include <string_view>
#include <vector>

namespace gencontact::detail {

struct EmbeddedFile {
  std::string_view path;  // relative to core/data
  std::string_view text;
};

const std::vector<EmbeddedFile>& embedded_files();

}  // namespace gencontact::detail
