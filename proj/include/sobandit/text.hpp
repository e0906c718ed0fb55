#pragma once

#include <string>
#include <vector>

namespace sobandit {

// %.9g rendering; infinities become the literal "inf" / "-inf".
std::string format_real(double value);

std::vector<std::string> split(const std::string& text, char sep);

}  // namespace sobandit
