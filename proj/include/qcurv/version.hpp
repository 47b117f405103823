// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qcurv {

inline const char* version_string() { return "0.1.0"; }

}  // namespace qcurv
