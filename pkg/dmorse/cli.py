# Copyright 2025 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Command line interface.

Every command prints tab separated rows sorted by canonical simplex names to
standard output. Diagnostics go to standard error. The exit status is 0 on
success, 1 when a check fails and 2 on usage or input errors.
"""

import argparse
import concurrent.futures
import dataclasses
import itertools
import logging
import pathlib
import sys
import typing

import networkx as nx

from dmorse import dot, formats
from dmorse.complex import Simplex, SimplicialComplex, betti_numbers
from dmorse.connectivity import (ConnectionReport, assert_graph,
                                 connection_matrix, is_optimal,
                                 verify_euler_theorem)
from dmorse.errors import MorseError, UnknownCorpusEntryError
from dmorse.generate import (complex_corpus, corpus_entry, enumerate_gvfs,
                             random_dmf, realize_dmf)
from dmorse.morse import (MorseFunction, critical_simplices, format_value,
                          gradient_field, morse_inequalities, parse_value,
                          validate_dmf)
from dmorse.persistence import morse_equalities_report, persistence_pairs

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = 'builtin:'
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """Parsed command line of one invocation."""

  command: str
  complex_path: str
  function_paths: tuple[str, ...] = ()
  dim: typing.Optional[int] = None
  seed: int = 0
  at: typing.Optional[str] = None
  check: typing.Optional[str] = None
  jobs: int = 1
  style: str = 'graph'
  output: typing.Optional[str] = None
  allow_ties: bool = False
  all_witnesses: bool = False


@dataclasses.dataclass(frozen=True)
class Inputs:
  """A resolved complex with the named functions it ships."""

  complex: SimplicialComplex
  builtins: typing.Mapping[str, MorseFunction]


def resolve_complex(source: str) -> Inputs:
  """Files win over builtins of the same name."""
  if pathlib.Path(source).is_file():
    return Inputs(formats.load_complex(source), {})
  name = source[len(BUILTIN_PREFIX):] if source.startswith(
      BUILTIN_PREFIX) else source
  complexes = complex_corpus()
  if name in complexes:
    return Inputs(complexes[name], {})
  try:
    entry = corpus_entry(name)
  except UnknownCorpusEntryError:
    raise UnknownCorpusEntryError(
        f'No such file or builtin complex: {source}') from None
  return Inputs(entry.graph, entry.functions)


def resolve_function(source: str, inputs: Inputs) -> MorseFunction:
  if pathlib.Path(source).is_file():
    return formats.load_function(source, inputs.complex)
  if source.startswith(BUILTIN_PREFIX):
    name = source[len(BUILTIN_PREFIX):]
    if name in inputs.builtins:
      return inputs.builtins[name]
  raise UnknownCorpusEntryError(f'No such file or builtin function: {source}')


def _functions(config: RunConfig, inputs: Inputs,
               count: int) -> list[MorseFunction]:
  if len(config.function_paths) != count:
    raise MorseError(f'{config.command} needs {count} function(s)')
  return [resolve_function(source, inputs) for source in config.function_paths]


def _write(config: RunConfig, text: str, out: typing.TextIO) -> None:
  if config.output:
    pathlib.Path(config.output).write_text(text, encoding='utf-8')
    logger.info('Wrote %s', config.output)
  else:
    out.write(text)


def _validate(config: RunConfig, inputs: Inputs, out: typing.TextIO) -> int:
  (function,) = _functions(config, inputs, 1)
  report = validate_dmf(inputs.complex, function,
                        require_injective=not config.allow_ties)
  for violation in report.violations:
    names = ','.join(s.name for s in violation.simplices)
    out.write(f'{violation.kind.value}\t{names}\t{violation.message}\n')
  out.write(f'ok={str(report.ok).lower()}\n')
  return EXIT_OK if report.ok else EXIT_FAILED


def _selected(config: RunConfig, simplex: Simplex) -> bool:
  return config.dim is None or simplex.dim == config.dim


def _critical(config: RunConfig, inputs: Inputs, out: typing.TextIO) -> int:
  (function,) = _functions(config, inputs, 1)
  criticality = critical_simplices(inputs.complex, function)
  out.write('simplex\tdim\tvalue\ttag\n')
  for simplex in inputs.complex:
    if _selected(config, simplex):
      tag = 'critical' if simplex in criticality else 'regular'
      out.write(f'{simplex}\t{simplex.dim}\t'
                f'{format_value(function[simplex])}\t{tag}\n')
  out.write(' '.join(
      f'C{q}={c}' for q, c in enumerate(criticality.counts())) + '\n')
  return EXIT_OK


def _pairs(config: RunConfig, inputs: Inputs, out: typing.TextIO) -> int:
  (function,) = _functions(config, inputs, 1)
  result = persistence_pairs(inputs.complex, function)
  out.write('dim\tbirth\tdeath\tbirth_value\tdeath_value\tpersistence\n')
  for pair in result.pairs:
    if config.dim is not None and pair.dim != config.dim:
      continue
    death = 'inf' if pair.death is None else pair.death.name
    death_value = ('inf' if pair.death_value is None else format_value(
        pair.death_value))
    persistence = ('inf' if pair.persistence is None else format_value(
        pair.persistence))
    out.write(f'{pair.dim}\t{pair.birth}\t{death}\t'
              f'{format_value(pair.birth_value)}\t{death_value}\t'
              f'{persistence}\n')
  return EXIT_OK


def _betti(config: RunConfig, inputs: Inputs, out: typing.TextIO) -> int:
  if config.at is not None:
    (function,) = _functions(config, inputs, 1)
    betti = persistence_pairs(inputs.complex,
                              function).betti_at(parse_value(config.at))
  else:
    betti = betti_numbers(inputs.complex)
  out.write('dim\tbetti\n')
  for q, b in enumerate(betti):
    if config.dim is None or q == config.dim:
      out.write(f'{q}\t{b}\n')
  return EXIT_OK


def _connect(config: RunConfig, inputs: Inputs, out: typing.TextIO) -> int:
  f1, f2 = _functions(config, inputs, 2)
  assert_graph(inputs.complex)
  out.write('q\talpha\tbeta\tdirection\twitness_path\n')
  for q in (0, 1):
    if config.dim is not None and q != config.dim:
      continue
    for connection in connection_matrix(inputs.complex, f1, f2, q):
      witnesses = connection.forward + connection.backward
      if not config.all_witnesses:
        witnesses = witnesses[:1]
      for witness in witnesses:
        out.write(f'{q}\t{connection.alpha}\t{connection.beta}\t'
                  f'{connection.direction}\t{witness}\n')
  report = verify_euler_theorem(inputs.complex, f1, f2)
  out.write(report.summary() + '\n')
  return EXIT_OK


def _check_euler(config: RunConfig, inputs: Inputs,
                 out: typing.TextIO) -> int:
  f1, f2 = _functions(config, inputs, 2)
  report = verify_euler_theorem(inputs.complex, f1, f2)
  out.write(report.summary() + '\n')
  return EXIT_OK if report.ok else EXIT_FAILED


def _function_failures(complex_: SimplicialComplex,
                       function: MorseFunction) -> list[str]:
  failures = []
  if not morse_inequalities(complex_, function).ok:
    failures.append('morse inequalities')
  if not morse_equalities_report(complex_, function).ok:
    failures.append('morse equalities')
  zero = frozenset(persistence_pairs(complex_, function).zero_persistence)
  if zero != gradient_field(complex_, function).pairs:
    failures.append('zero persistence pairs differ from the gradient field')
  return failures


def _unique_descent(report: ConnectionReport) -> bool:
  strong = report.strong_pairs()
  return (all(len(c.forward) <= 1 and len(c.backward) <= 1 for c in report)
          and len({alpha for alpha, _ in strong}) == len(strong) and
          len({beta for _, beta in strong}) == len(strong))


def _is_cycle(complex_: SimplicialComplex) -> bool:
  graph = assert_graph(complex_).graph
  return (len(graph) >= 3 and nx.is_connected(graph) and
          all(degree == 2 for _, degree in graph.degree))


def _connectivity_failures(complex_: SimplicialComplex, f1: MorseFunction,
                           f2: MorseFunction,
                           betti: typing.Sequence[int]) -> list[str]:
  failures = []
  b0, b1 = betti[0], betti[1] if len(betti) > 1 else 0
  r0 = connection_matrix(complex_, f1, f2, 0)
  r1 = connection_matrix(complex_, f1, f2, 1)
  if not _unique_descent(r0) or (b1 == 0 and not _unique_descent(r1)):
    failures.append('descent not unique')
  if _is_cycle(complex_) and r0.a_q != r1.a_q:
    failures.append('cycle counts differ')
  if is_optimal(complex_, f1) and is_optimal(complex_, f2):
    if r0.a_q != b0 or r1.a_q < b1:
      failures.append('optimal pair counts')
    for q, report, betti_q in ((0, r0, b0), (1, r1, b1)):
      if betti_q != 1:
        continue
      (alpha,) = (s for s in critical_simplices(complex_, f1).critical
                  if s.dim == q)
      (beta,) = (s for s in critical_simplices(complex_, f2).critical
                 if s.dim == q)
      if (alpha, beta) not in report.strong_pairs():
        failures.append(f'optimal pair not strongly connected in dim {q}')
  return failures


def check_pair(complex_: SimplicialComplex, f1: MorseFunction,
               f2: MorseFunction, check: str) -> list[str]:
  """Failed checks for one ordered pair of functions; empty when all pass."""
  failures = []
  report = verify_euler_theorem(complex_, f1, f2)
  if not report.ok:
    failures.append(report.summary())
  if check == 'all':
    for function in (f1, f2):
      failures += _function_failures(complex_, function)
    failures += _connectivity_failures(complex_, f1, f2, report.betti)
  return failures



def _check_chunk(
    complex_: SimplicialComplex,
    chunk: list[tuple[int, int, MorseFunction, MorseFunction]],
    check: str) -> list[tuple[int, int, list[str]]]:
  return [(i, j, check_pair(complex_, f1, f2, check))
          for i, j, f1, f2 in chunk]


def _enumerate(config: RunConfig, inputs: Inputs,
               out: typing.TextIO) -> int:
  fields = enumerate_gvfs(inputs.complex)
  if config.check is None:
    out.write('\n'.join(formats.format_field(field) + '\n'
                        for field in fields))
    return EXIT_OK

  functions = [realize_dmf(inputs.complex, field) for field in fields]
  work = [(i, j, functions[i], functions[j])
          for i, j in itertools.product(range(len(functions)), repeat=2)]
  jobs = max(1, config.jobs)
  chunks = [work[k::jobs] for k in range(jobs)]
  if jobs == 1:
    results = _check_chunk(inputs.complex, work, config.check)
  else:
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
      futures = [
          executor.submit(_check_chunk, inputs.complex, chunk, config.check)
          for chunk in chunks
      ]
      results = [r for future in futures for r in future.result()]
  results.sort(key=lambda r: (r[0], r[1]))

  failed = 0
  for i, j, failures in results:
    if failures:
      failed += 1
      out.write(f'{i}\t{j}\t{"; ".join(failures)}\n')
  out.write(f'fields={len(fields)} pairs={len(results)} failures={failed}\n')
  return EXIT_OK if not failed else EXIT_FAILED


def _gen(config: RunConfig, inputs: Inputs, out: typing.TextIO) -> int:
  function = random_dmf(inputs.complex, config.seed)
  _write(config, formats.dump_function(function), out)
  return EXIT_OK


def _export_dot(config: RunConfig, inputs: Inputs,
                out: typing.TextIO) -> int:
  function = None
  if config.function_paths:
    (function,) = _functions(config, inputs, 1)
  _write(config, dot.render(inputs.complex, function, config.style), out)
  return EXIT_OK


_COMMANDS = {
    'validate': _validate,
    'critical': _critical,
    'pairs': _pairs,
    'betti': _betti,
    'connect': _connect,
    'check-euler': _check_euler,
    'enumerate': _enumerate,
    'gen': _gen,
    'export-dot': _export_dot,
}


def run(config: RunConfig, out: typing.Optional[typing.TextIO] = None) -> int:
  """Executes one command and returns its exit status."""
  out = out or sys.stdout
  try:
    inputs = resolve_complex(config.complex_path)
    return _COMMANDS[config.command](config, inputs, out)
  except (MorseError, OSError) as e:
    sys.stderr.write(f'dmorse: error: {e}\n')
    return EXIT_ERROR


def _parser() -> argparse.ArgumentParser:
  parser = argparse.ArgumentParser(
      prog='dmorse',
      description='Discrete Morse theory on simplicial complexes.')
  parser.add_argument('-v', '--verbose', action='store_true',
                      help='log debug messages to standard error')
  commands = parser.add_subparsers(dest='command', required=True)

  def command(name: str, help_text: str,
              functions: int = 0) -> argparse.ArgumentParser:
    sub = commands.add_parser(name, help=help_text)
    sub.add_argument('-k', '--complex', required=True,
                     help='a .cplx file or a builtin name')
    if functions == 1:
      sub.add_argument('-f', '--function', action='append', default=[],
                       help='a .dmf file or builtin:<name>')
    elif functions == 2:
      sub.add_argument('--f1', required=True)
      sub.add_argument('--f2', required=True)
    return sub

  sub = command('validate', 'check the discrete Morse axioms', 1)
  sub.add_argument('--allow-ties', action='store_true',
                   help='accept repeated values')
  sub = command('critical', 'list critical simplices', 1)
  sub.add_argument('--dim', type=int)
  sub = command('pairs', 'persistence pairs', 1)
  sub.add_argument('--dim', type=int)
  sub = command('betti', 'Betti numbers, of K(c) with --at', 1)
  sub.add_argument('--dim', type=int)
  sub.add_argument('--at', help='a value c; needs --function')
  sub = command('connect', 'connections between two functions', 2)
  sub.add_argument('--dim', type=int, choices=(0, 1))
  sub.add_argument('--all-witnesses', action='store_true',
                   help='one row per witness path')
  command('check-euler', 'check A0 - A1 = chi', 2)
  sub = command('enumerate', 'enumerate gradient vector fields')
  sub.add_argument('--check', choices=('euler', 'all'))
  sub.add_argument('--jobs', type=int, default=1)
  sub = command('gen', 'write a random discrete Morse function')
  sub.add_argument('--seed', type=int, default=0)
  sub.add_argument('-o', '--output')
  sub = command('export-dot', 'render as DOT', 1)
  sub.add_argument('--style', choices=dot.STYLES, default='graph')
  sub.add_argument('-o', '--output')
  return parser


def parse_args(argv: typing.Optional[typing.Sequence[str]] = None
              ) -> tuple[RunConfig, bool]:
  args = _parser().parse_args(argv)
  functions: tuple[str, ...] = tuple(getattr(args, 'function', ()))
  if hasattr(args, 'f1'):
    functions = (args.f1, args.f2)
  config = RunConfig(
      command=args.command,
      complex_path=args.complex,
      function_paths=functions,
      dim=getattr(args, 'dim', None),
      seed=getattr(args, 'seed', 0),
      at=getattr(args, 'at', None),
      check=getattr(args, 'check', None),
      jobs=getattr(args, 'jobs', 1),
      style=getattr(args, 'style', 'graph'),
      output=getattr(args, 'output', None),
      allow_ties=getattr(args, 'allow_ties', False),
      all_witnesses=getattr(args, 'all_witnesses', False))
  return config, args.verbose


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
  config, verbose = parse_args(argv)
  logging.basicConfig(
      level=logging.DEBUG if verbose else logging.WARNING,
      format='%(levelname)s %(name)s: %(message)s',
      stream=sys.stderr)
  return run(config)


if __name__ == '__main__':
  sys.exit(main())
