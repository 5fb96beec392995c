#! /usr/bin/env python3
# coding: utf8

"""
File : application.py
Author : lgbarrere
Brief : Command line front end: verify kernels, evaluate Mittag-Leffler functions,
solve fractional IVPs in closed form and compare them with the Volterra oracle
"""
import argparse
import logging as lg
import sys
from os import path

from .manager.errors import FracOpError, InvalidParameter
from .manager.gps_algebra import gps_scale
from .manager.kernel_catalog import (pair_from_json, sonin_residual, triple_from_json,
                                     triple_residual, verify_catalog)
from .manager.operational_solver import (problem_from_json, relaxation_lambda, solution_to_json,
                                         solve_basic, solve_multiterm, solve_relaxation)
from .manager.special_functions import MLParams, mittag_leffler, ml_power_type, prabhakar
from .manager.utility import (Constants, build_path, format_number, path_tail, read_json,
                              with_suffix, write_csv, write_json)
from .manager.volterra_oracle import (UniformGrid, convergence_study, oracle_comparison, sample,
                                      solve_volterra_ivp)


COMMANDS = ('kernel-verify', 'ml-eval', 'solve-basic', 'solve-relax', 'solve-multiterm',
            'oracle-compare', 'oracle-convergence')


class ArgumentParser(argparse.ArgumentParser):
    """
    Brief : Parser reporting usage errors as input errors (exit status 1)
    """
    def error(self, message):
        raise InvalidParameter(f"{self.prog}: {message}")


def parse_number(text):
    """
    Brief : Read a real or complex number from the command line
    Return : float or complex
    > text : Number text, e.g. 1.5 or 1+2j
    """
    try:
        return float(text)
    except ValueError:
        return complex(text.replace(' ', ''))


def build_parser():
    """
    Brief : Build the command line parser
    Return : ArgumentParser
    """
    parser = ArgumentParser(
        prog='fracop',
        description="Operational calculus for 1st level general fractional derivatives"
        )
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)
    for command in COMMANDS:
        child = sub.add_parser(command)
        child.add_argument('--order', type=int, default=None,
                           help='series order (number of convolution powers / kernel terms)')
        if command == 'ml-eval':
            child.add_argument('--alpha', type=float, required=True)
            child.add_argument('--beta', type=float, default=1.0)
            child.add_argument('--gamma', type=float, default=1.0)
            child.add_argument('--z', type=parse_number, required=True)
            child.add_argument('--m', type=int, default=None,
                               help='evaluate E^m_{alpha, alpha m}(z)')
            continue
        child.add_argument('--problem', default=None,
                           help='JSON problem (or kernel) document')
        child.add_argument('--t-end', type=float, default=None)
        child.add_argument('--n-steps', type=int, default=None)
        child.add_argument('--out', default=None, help='output file, extension replaced')
        child.add_argument('--format', choices=('csv', 'json'), default='csv')
        if command == 'oracle-convergence':
            child.add_argument('--steps', default='64,128,256,512',
                               help='comma separated numbers of steps')
    return parser


class CommandRunner(Constants):
    """
    Brief : Run one command from parsed arguments, write its artifacts
    """
    def __init__(self, args, stream=None):
        super().__init__()
        self.args = args
        self.stream = sys.stdout if stream is None else stream


    ## Getters
    def get_order(self):
        """
        Brief : Get the requested series order
        Return : The order, the default one if not given
        """
        return self.args.order if self.args.order is not None else self.get_default_order()


    def get_grid(self):
        """
        Brief : Get the time grid from --t-end and --n-steps
        Return : UniformGrid
        """
        return UniformGrid(self.args.t_end, self.args.n_steps)


    def get_problem_document(self):
        """
        Brief : Read the document named by --problem
        Return : The decoded document
        """
        if self.args.problem is None:
            raise InvalidParameter(f"{self.args.command} needs --problem")
        return read_json(self.args.problem)


    def get_out(self, suffix):
        """
        Brief : Get the output path with the given extension
        Return : Path
        > suffix : Extension, dot included
        """
        out = self.args.out
        if out is None:
            stem = path.splitext(path_tail(self.args.problem or 'catalog'))[0]
            out = build_path(self.get_result_path(),
                             file_name=f"{stem}_{self.args.command.replace('-', '_')}")
        return str(with_suffix(out, suffix))


    ## Methods
    def print(self, text):
        """
        Brief : Print a report line
        Return : None
        > text : Line
        """
        print(text, file=self.stream)


    def run(self):
        """
        Brief : Dispatch the command
        Return : Exit status
        """
        method = getattr(self, 'run_' + self.args.command.replace('-', '_'))
        return method()


    def run_kernel_verify(self):
        """
        Brief : Print Sonin and triple residuals of the catalog or of a document
        Return : 0 if every residual is within tolerance, 1 otherwise
        """
        order = self.args.order if self.args.order is not None else self.get_validation_order()
        if self.args.problem is None:
            row_list = verify_catalog(order)
        else:
            document = self.get_problem_document()
            if 'kind' in document:
                triple = triple_from_json(document, order)
                row_list = [(f'triple {triple.family_tag}',
                             triple_residual(triple.kappa, triple.k1, triple.k2))]
            else:
                pair = pair_from_json(document, order)
                row_list = [(f'pair {pair.family}', sonin_residual(pair.kappa, pair.k))]
        status = 0
        tol = self.get_residual_tol()
        for label, residual in row_list:
            verdict = 'ok' if residual < tol else 'FAIL'
            if verdict != 'ok':
                status = 1
            self.print(f'{label}: residual {residual:.3e} {verdict}')
        return status


    def run_ml_eval(self):
        """
        Brief : Print E_{alpha,beta}(z), E^gamma_{alpha,beta}(z) or E^m_{alpha,alpha m}(z)
        Return : 0
        """
        args = self.args
        if args.m is not None:
            value = ml_power_type(args.m, args.alpha, args.z)
        elif args.gamma != 1.0:
            value = prabhakar(MLParams(args.alpha, args.beta, args.gamma), args.z)
        else:
            value = mittag_leffler(MLParams(args.alpha, args.beta), args.z)
        if isinstance(value, complex):
            self.print(f'{format_number(value.real)} {format_number(value.imag)}')
        else:
            self.print(format_number(value))
        return 0


    def _load_problem(self):
        """
        Brief : Read the problem document
        Return : IVProblem
        """
        return problem_from_json(self.get_problem_document(), self.get_order())


    def _write_solution(self, solution):
        """
        Brief : Write <out>.json (series and pole tables) and <out>.csv (t,y)
        Return : 0
        > solution : SolutionExpression
        """
        grid = self.get_grid()
        # Refuse grids reaching beyond the truncation horizon
        solution.evaluate(grid.t_end)
        sampled = sample(solution.materialized(), grid)
        document = solution_to_json(solution)
        document['command'] = self.args.command
        document['problem'] = path_tail(self.args.problem)
        json_path = self.get_out('.json')
        csv_path = self.get_out('.csv')
        write_json(json_path, document)
        write_csv(csv_path, ['t', 'y'], zip(grid.nodes(), sampled.values))
        self.print(f'y({format_number(grid.t_end)}) = {format_number(sampled.values[-1])}')
        self.print(f'Saved {json_path} and {csv_path}')
        return 0


    def run_solve_basic(self):
        """
        Brief : Solve b_1 D y = f with (I_(k2) y)(0) = c_0
        Return : 0
        """
        problem = self._load_problem()
        if problem.degree() != 1 or problem.b_coeffs[0] != 0:
            raise InvalidParameter("solve-basic needs b = [0, b_1], use solve-relax or "
                                   "solve-multiterm otherwise")
        forcing = gps_scale(problem.forcing, 1.0 / problem.b_coeffs[1])
        return self._write_solution(solve_basic(problem.triple, problem.initial_values[0],
                                                forcing))


    def run_solve_relax(self):
        """
        Brief : Solve D y - lambda y = f with (I_(k2) y)(0) = c_0
        Return : 0
        """
        problem = self._load_problem()
        lam, scale = relaxation_lambda(problem)
        forcing = gps_scale(problem.forcing, 1.0 / scale)
        solution = solve_relaxation(problem.triple, lam, problem.initial_values[0], forcing,
                                    self.get_order())
        return self._write_solution(solution)


    def run_solve_multiterm(self):
        """
        Brief : Solve sum_n b_n D^<n> y = f
        Return : 0
        """
        problem = self._load_problem()
        return self._write_solution(solve_multiterm(problem, self.get_order()))


    def _write_table(self, header, row_list):
        """
        Brief : Write a report table as CSV or JSON (--format)
        Return : Path of the written file
        > header : Column names
        > row_list : Rows
        """
        if self.args.format == 'json':
            file_path = self.get_out('.json')
            write_json(file_path, {'columns': list(header),
                                   'rows': [[float(v) for v in row] for row in row_list]})
        else:
            file_path = self.get_out('.csv')
            write_csv(file_path, header, row_list)
        return file_path


    def run_oracle_compare(self):
        """
        Brief : Compare the closed form solution with the Volterra oracle on a grid
        Return : 0
        """
        problem = self._load_problem()
        grid = self.get_grid()
        solution = solve_multiterm(problem, self.get_order())
        sampled = solve_volterra_ivp(problem, grid)
        row_list, max_rel = oracle_comparison(solution.evaluate, sampled)
        file_path = self._write_table(('t', 'y_closed', 'y_volterra', 'abs_err', 'rel_err'),
                                      row_list)
        self.print(f'max rel err (t >= {self.get_interior_fraction():g} t_end) = '
                   f'{max_rel:.3e}')
        self.print(f'Saved {file_path}')
        return 0


    def run_oracle_convergence(self):
        """
        Brief : Error of the Volterra oracle against the closed form for several steps
        Return : 0
        """
        problem = self._load_problem()
        try:
            steps_list = [int(text) for text in self.args.steps.split(',')]
        except ValueError as error:
            raise InvalidParameter(f"--steps must list integers, got {self.args.steps}") from error
        solution = solve_multiterm(problem, self.get_order())
        row_list = convergence_study(problem, solution.evaluate, steps_list, self.args.t_end)
        for n_steps, h, max_err, order in row_list:
            self.print(f'n_steps={n_steps} h={h:.6g} max_err={max_err:.3e} order={order:.3f}')
        file_path = self._write_table(('n_steps', 'h', 'max_err', 'observed_order'), row_list)
        self.print(f'Saved {file_path}')
        return 0


def main(argv=None, stream=None):
    """
    Brief : Entry point
    Return : Exit status, 0 success, 1 input error, 2 numerical failure
    > argv : Arguments, sys.argv[1:] if None
    > stream : Output stream, stdout if None
    """
    try:
        args = build_parser().parse_args(argv)
        lg.basicConfig(level=lg.DEBUG if args.verbose else lg.WARNING)
        return CommandRunner(args, stream).run()
    except FracOpError as error:
        lg.critical("%s: %s", type(error).__name__, error)
        return error.exit_status


if __name__ == '__main__':
    sys.exit(main())
