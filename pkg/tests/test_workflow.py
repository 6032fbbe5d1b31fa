import os
import re

from .conftest import root_dir


class TestWorkflow:

    def test_workflow(self):
        filename = 'noma_workflow.yml'
        try:
            with open(os.path.join(root_dir, filename), 'r') as f:
                workflow = f.read()
        except FileNotFoundError:
            assert False, f'Проверьте, что добавили файл {filename} в каталог {root_dir}'

        assert re.search(r'on:\s*push:\s*branches:\s*-\smaster', workflow), (
            f'Проверьте, что добавили действие при пуше в файл {filename}'
        )
        assert 'flake8' in workflow, f'Проверьте, что добавили flake8 в файл {filename}'
        assert 'pytest' in workflow, f'Проверьте, что добавили pytest в файл {filename}'
        assert 'manage.py validate' in workflow, (
            f'Проверьте, что сверка движков запускается в файле {filename}'
        )


class TestReadme:

    def test_readme(self):
        try:
            with open(os.path.join(root_dir, 'README.md'), 'r', encoding='utf-8') as f:
                readme = f.read()
        except FileNotFoundError:
            assert False, 'Проверьте, что добавили файл README.md'

        re_str = (
            r'https:\/\/github\.com\/[a-zA-Z0-9_-]+\/[a-zA-Z0-9_-]+'
            r'\/(actions\/)?workflows\/[-a-zA-Z0-9._+]+\/badge\.svg'
        )
        assert re.search(re_str, readme), 'Проверьте, что добавили бейдж со статусом работы workflow в файл README.md'
        for command in ('outage', 'goodput', 'sweep', 'validate'):
            assert f'**{command}**' in readme, f'Проверьте описание команды {command} в README.md'
