"""
Tarefas Celery do gkgalois.
"""
