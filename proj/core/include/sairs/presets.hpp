#ifndef SAIRS_PRESETS_HPP
#define SAIRS_PRESETS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "sairs/config.hpp"

namespace sairs::presets {

/** Built-in run configurations used by the packaged verification suite.
 *  The files under configs/ mirror these setups one to one. */
RunConfig example1();  ///< persistent regime, moderate noise
RunConfig example2();  ///< example1 with a larger disease-induced death rate
RunConfig example3();  ///< example1 with weaker noise
RunConfig example4();  ///< extinction regime with strong compartment noise
RunConfig example5();  ///< long-horizon stationary regime
RunConfig example6();  ///< intervention planning scenario with cost weights

RunConfig by_name(std::string_view name);
std::vector<std::string> names();

}  // namespace sairs::presets

#endif
