// Copyright 2026 The mfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MFC__MFC_HPP_
#define MFC__MFC_HPP_

#include "mfc/controller.hpp"
#include "mfc/finite_difference.hpp"
#include "mfc/fts.hpp"
#include "mfc/output_observer.hpp"
#include "mfc/plants.hpp"
#include "mfc/types.hpp"
#include "mfc/ulm.hpp"

#endif  // MFC__MFC_HPP_
