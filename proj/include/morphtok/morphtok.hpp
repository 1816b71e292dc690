// Copyright 2026 The morphtok Authors
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

#ifndef MORPHTOK_MORPHTOK_HPP_
#define MORPHTOK_MORPHTOK_HPP_

#include "morphtok/corpus_io.hpp"
#include "morphtok/eval.hpp"
#include "morphtok/morph_model.hpp"
#include "morphtok/pipeline.hpp"
#include "morphtok/presegment.hpp"
#include "morphtok/text.hpp"
#include "morphtok/tokenizer.hpp"
#include "morphtok/ulm.hpp"
#include "morphtok/wordpiece.hpp"

#endif  // MORPHTOK_MORPHTOK_HPP_
